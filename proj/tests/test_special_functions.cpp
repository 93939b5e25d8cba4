#include <doctest.h>

#include <cmath>
#include <random>

#include "fblrelay/special_functions.hpp"
#include "oracles.hpp"

using namespace fblrelay;

namespace {
double rel_err(double got, long double want) {
  return std::abs(static_cast<long double>(got) - want) == 0.0L
             ? 0.0
             : static_cast<double>(fabsl((static_cast<long double>(got) - want) / want));
}
}  // namespace

TEST_CASE("q_function basic values") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(q_function(1.7) - (1.0 - q_function(-1.7))) < 1e-15);
  CHECK(std::abs(q_function(1.2815515655) - 0.1) < 1e-10);
  CHECK_THROWS_AS(q_function(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(q_function(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("q_function reflection and monotonicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  double prev = 2.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(rng);
    CHECK(std::abs(q_function(x) + q_function(-x) - 1.0) <= 1e-14);
  }
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    const double q = q_function(x);
    CHECK(q <= prev);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    prev = q;
  }
}

TEST_CASE("q_function matches tail quadrature oracle") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double x = dist(rng);
    CHECK(rel_err(q_function(x), oracles::q_gauss_tail(x)) < 1e-12);
  }
}

TEST_CASE("exp_integral_ei frozen points") {
  CHECK(exp_integral_ei(-1.0) == doctest::Approx(-0.21938393439552027368).epsilon(1e-12));
  CHECK(exp_integral_ei(-0.5) == doctest::Approx(-0.55977359477616081175).epsilon(1e-12));
}

TEST_CASE("exp_integral_ei domain and decay") {
  CHECK_THROWS_AS(exp_integral_ei(0.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(1.0), std::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(std::nan("")), std::domain_error);
  const double e10 = exp_integral_ei(-10.0);
  const double e20 = exp_integral_ei(-20.0);
  const double e40 = exp_integral_ei(-40.0);
  CHECK(e10 < e20);
  CHECK(e20 < e40);
  CHECK(e40 < 0.0);
  // increasing toward zero on a grid
  double prev = exp_integral_ei(-50.0);
  for (double x = -49.0; x <= -0.01; x += 0.25) {
    const double v = exp_integral_ei(x);
    CHECK(v < 0.0);
    CHECK(v < prev + 1e-18);
    CHECK(v > prev);  // strictly increasing
    prev = v;
  }
}

TEST_CASE("exp_integral_ei matches series oracle on the series range") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(9.0));
  for (int i = 0; i < 500; ++i) {
    const double u = std::exp(logu(rng));
    CHECK(rel_err(exp_integral_ei(-u), -expl(-static_cast<long double>(u)) *
                                           oracles::e1_series(u)) < 1e-11);
  }
}

TEST_CASE("exp_e1_scaled matches integral and asymptotic oracles") {
  for (double w : {0.05, 0.3, 0.9, 1.0, 1.1, 2.0, 5.0, 10.0, 20.0, 50.0, 200.0, 700.0}) {
    CHECK(rel_err(exp_e1_scaled(w), oracles::exp_e1_scaled_integral(w)) < 1e-11);
  }
  for (double w : {30.0, 40.0, 100.0, 500.0, 5000.0}) {
    CHECK(rel_err(exp_e1_scaled(w), oracles::exp_e1_scaled_asymptotic(w)) < 5e-12);
  }
}

TEST_CASE("exp_scaled_ei_diff reductions and antisymmetry") {
  // a = 0 reduces to the plain difference
  const double direct = exp_integral_ei(-1.0) - exp_integral_ei(-2.0);
  CHECK(exp_scaled_ei_diff(0.0, 1.0, 2.0) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(exp_scaled_ei_diff(3.7, 1.25, 1.25) == 0.0);
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> du(0.1, 20.0), da(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double u = du(rng), v = du(rng), a = da(rng);
    CHECK(exp_scaled_ei_diff(a, u, v) == doctest::Approx(-exp_scaled_ei_diff(a, v, u)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(exp_scaled_ei_diff(0.0, -1.0, 2.0), std::domain_error);
}

TEST_CASE("exp_scaled_ei_diff large-argument stability") {
  // e^100 * (Ei(-100.5) - Ei(-101)) stays finite and matches the scaled oracle
  const double got = exp_scaled_ei_diff(100.0, 100.5, 101.0);
  const long double want = expl(-0.5L) * -oracles::exp_e1_scaled_asymptotic(100.5L) -
                           expl(-1.0L) * -oracles::exp_e1_scaled_asymptotic(101.0L);
  CHECK(std::isfinite(got));
  CHECK(rel_err(got, want) < 1e-11);
}

TEST_CASE("exp_scaled_ei_diff agrees with the naive product in the safe band") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> du(0.05, 30.0), da(0.0, 50.0);
  for (int i = 0; i < 300; ++i) {
    const double u = du(rng), v = du(rng), a = da(rng);
    const double naive = std::exp(a) * (exp_integral_ei(-u) - exp_integral_ei(-v));
    const double stable = exp_scaled_ei_diff(a, u, v);
    if (std::isfinite(naive) && naive != 0.0)
      CHECK(std::abs(stable - naive) <= 1e-9 * std::abs(naive));
  }
}

TEST_CASE("Accuracy invariants are enforced") {
  Accuracy bad_tol;
  bad_tol.rel_tol = 1e-3;
  CHECK_THROWS_AS(exp_integral_ei(-1.0, bad_tol), std::domain_error);
  Accuracy bad_terms;
  bad_terms.max_terms = 10;
  CHECK_THROWS_AS(exp_integral_ei(-1.0, bad_terms), std::domain_error);
}
