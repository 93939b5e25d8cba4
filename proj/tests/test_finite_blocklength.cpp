#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fblrelay/finite_blocklength.hpp"
#include "oracles.hpp"

using namespace fblrelay;

TEST_CASE("capacity and dispersion basics") {
  CHECK(capacity(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(capacity(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(capacity(0.0) == 0.0);
  CHECK_THROWS_AS(capacity(-0.1), std::domain_error);

  const double l2e2 = std::numbers::log2e * std::numbers::log2e;
  CHECK(dispersion(0.0) == 0.0);
  CHECK(dispersion(1.0) == doctest::Approx(0.75 * l2e2).epsilon(1e-14));
  CHECK(dispersion(1e12) == doctest::Approx(l2e2).epsilon(1e-9));
  CHECK_THROWS_AS(dispersion(-1.0), std::domain_error);
}

TEST_CASE("coding spec factories") {
  const CodingSpec f = CodingSpec::fdr(256, 512);
  CHECK(f.rate() == doctest::Approx(0.5));
  CHECK(f.blocklength == 512.0);
  const CodingSpec h = CodingSpec::hdr(256, 512);
  CHECK(h.blocklength == 256.0);
  CHECK(h.rate() == doctest::Approx(1.0));
  const CodingSpec hodd = CodingSpec::hdr(100, 301);
  CHECK(hodd.blocklength == doctest::Approx(150.5));
  CHECK_THROWS_AS(CodingSpec::fdr(0, 512), std::domain_error);
  CHECK(validity_warning(CodingSpec::hdr(16, 64)).has_value());
  CHECK(!validity_warning(CodingSpec::fdr(256, 512)).has_value());
}

TEST_CASE("block_error_exact anchor points") {
  const CodingSpec spec = CodingSpec::fdr(256, 512);
  const double theta = std::exp2(spec.rate()) - 1.0;
  CHECK(block_error_exact(theta, spec) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(block_error_exact(1e9, spec) < 1e-300);
  CHECK(block_error_exact(0.0, spec) == 1.0);
  CHECK_THROWS_AS(block_error_exact(-1.0, spec), std::domain_error);
}

TEST_CASE("block_error_exact against the Q quadrature oracle") {
  const CodingSpec spec = CodingSpec::fdr(256, 512);
  for (double snr : {0.05, 0.2, 0.41, 0.5, 1.0, 2.0, 5.0}) {
    const long double c = logl(1.0L + static_cast<long double>(snr)) / logl(2.0L);
    const long double t = 1.0L + static_cast<long double>(snr);
    const long double v = (1.0L - 1.0L / (t * t)) / (logl(2.0L) * logl(2.0L));
    const long double arg = (c - 0.5L) / sqrtl(v / 512.0L);
    const long double want = oracles::q_gauss_tail(arg);
    CHECK(std::abs(block_error_exact(snr, spec) - static_cast<double>(want)) <=
          1e-12 * static_cast<double>(want) + 1e-300);
  }
}

TEST_CASE("block_error_exact is monotone non-increasing") {
  const CodingSpec spec = CodingSpec::fdr(300, 700);
  double prev = 2.0;
  for (double g = 1e-4; g < 1e4; g *= 1.07) {
    const double e = block_error_exact(g, spec);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
}

TEST_CASE("linear_approx_params frozen values") {
  // rate 1/2, m = 512: extended-precision direct evaluation of the formulas
  const long double theta_l = sqrtl(2.0L) - 1.0L;
  const long double half_l = 3.14159265358979323846264338327950288L / sqrtl(512.0L);
  const LinearApproxParams p = linear_approx_params(CodingSpec::fdr(256, 512));
  CHECK(p.slope_coeff == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(p.threshold_snr == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(p.ramp_lower == doctest::Approx(static_cast<double>(theta_l - half_l)).epsilon(1e-12));
  CHECK(p.ramp_upper == doctest::Approx(static_cast<double>(theta_l + half_l)).epsilon(1e-12));
  // coarse anchors
  CHECK(p.slope_coeff == doctest::Approx(0.159155).epsilon(1e-5));
  CHECK(p.threshold_snr == doctest::Approx(0.414214).epsilon(1e-5));
  CHECK(p.ramp_lower == doctest::Approx(0.27537).epsilon(1e-4));
  CHECK(p.ramp_upper == doctest::Approx(0.55305).epsilon(1e-4));
  // rate 1, m = 100
  const LinearApproxParams p2 = linear_approx_params(CodingSpec::fdr(100, 100));
  CHECK(p2.threshold_snr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p2.slope_coeff ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("linear_approx_params symmetry and domain") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> mdist(100, 4096);
  std::uniform_real_distribution<double> rdist(0.05, 3.0);
  for (int i = 0; i < 200; ++i) {
    const int m = mdist(rng);
    const int sigma = std::max(1, static_cast<int>(std::lround(rdist(rng) * m)));
    const LinearApproxParams p = linear_approx_params(CodingSpec::fdr(sigma, m));
    const double lo_gap = p.threshold_snr - p.ramp_lower;
    const double hi_gap = p.ramp_upper - p.threshold_snr;
    CHECK(lo_gap == doctest::Approx(hi_gap).epsilon(1e-12));
    CHECK(lo_gap ==
          doctest::Approx(1.0 / (2.0 * p.slope_coeff * std::sqrt(static_cast<double>(m))))
              .epsilon(1e-12));
    CHECK(p.slope_coeff > 0.0);
  }
  CodingSpec zero_rate{1, 1.0};
  zero_rate.payload_bits = 0;
  CHECK_THROWS_AS(linear_approx_params(zero_rate), std::domain_error);
}

TEST_CASE("xi_approx branches and continuity") {
  const CodingSpec spec = CodingSpec::fdr(256, 512);
  const LinearApproxParams p = linear_approx_params(spec);
  REQUIRE(p.ramp_lower > 0.0);
  CHECK(xi_approx(p.threshold_snr, p, spec.blocklength) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(xi_approx(p.ramp_lower / 2.0, p, spec.blocklength) == 1.0);
  CHECK(xi_approx(2.0 * p.ramp_upper, p, spec.blocklength) == 0.0);
  const double eps = 1e-13;
  CHECK(std::abs(xi_approx(p.ramp_lower - eps, p, spec.blocklength) -
                 xi_approx(p.ramp_lower + eps, p, spec.blocklength)) < 1e-11);
  CHECK(std::abs(xi_approx(p.ramp_upper - eps, p, spec.blocklength) -
                 xi_approx(p.ramp_upper + eps, p, spec.blocklength)) < 1e-11);
  for (double g = 0.0; g < 1.0; g += 0.003) {
    const double v = xi_approx(g, p, spec.blocklength);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("ramp approximation tracks the exact error probability on average") {
  const CodingSpec spec = CodingSpec::fdr(256, 512);
  const LinearApproxParams p = linear_approx_params(spec);
  std::mt19937_64 rng(22);
  std::exponential_distribution<double> snr_dist(1.0 / (10.0 * p.threshold_snr));
  double gap = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = snr_dist(rng);
    gap += std::abs(block_error_exact(g, spec) - xi_approx(g, p, spec.blocklength));
  }
  CHECK(gap / n < 0.01);
}

TEST_CASE("ramp matches the exact probability at the threshold") {
  for (int sigma : {128, 256, 801}) {
    for (int m : {256, 512, 1024}) {
      const CodingSpec spec = CodingSpec::fdr(sigma, m);
      const LinearApproxParams p = linear_approx_params(spec);
      CHECK(std::abs(block_error_exact(p.threshold_snr, spec) - 0.5) < 1e-9);
      CHECK(std::abs(xi_approx(p.threshold_snr, p, spec.blocklength) - 0.5) < 1e-12);
    }
  }
}
