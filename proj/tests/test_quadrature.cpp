#include <doctest.h>

#include <cmath>

#include "fblrelay/quadrature.hpp"

using namespace fblrelay;

TEST_CASE("polynomials and smooth integrands") {
  const auto sq = [](double x) { return x * x; };
  CHECK(integrate_adaptive(sq, 0.0, 1.0, 1e-12).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto ex = [](double x) { return std::exp(x); };
  CHECK(integrate_adaptive(ex, 0.0, 2.0, 1e-12).value ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
  const auto osc = [](double x) { return std::sin(x); };
  CHECK(integrate_adaptive(osc, 0.0, 10.0 * M_PI, 1e-11).value ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate and zero integrands") {
  const auto zero = [](double) { return 0.0; };
  const QuadResult r = integrate_adaptive(zero, 0.0, 3.0, 1e-9);
  CHECK(r.value == 0.0);
  CHECK(integrate_adaptive(zero, 2.0, 2.0, 1e-9).value == 0.0);
}

TEST_CASE("budget exhaustion raises convergence_error") {
  const auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-8)); };
  CHECK_THROWS_AS(integrate_adaptive(nasty, 0.0, 1.0, 1e-14, 0.0, 200), convergence_error);
  // unreachable tolerance on a smooth integrand also trips the budget
  const auto smooth = [](double x) { return std::exp(-x) / (1.0 + x); };
  CHECK_THROWS_AS(integrate_adaptive(smooth, 0.0, 1.0, 1e-18, 0.0, 100000), convergence_error);
}
