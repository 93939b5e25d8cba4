#include <doctest.h>

#include <cmath>
#include <random>

#include "fblrelay/channels.hpp"
#include "oracles.hpp"

using namespace fblrelay;

TEST_CASE("avg_snrs arithmetic") {
  SystemParams sys;
  sys.gains = LinkGains{1e-8, 3.16227766016838e-9, 1e-11, 1e-12, 1e-12};
  sys.power_s = 1.0;
  sys.power_r = 1.0;
  const AvgSnrs s = avg_snrs(sys);
  CHECK(s.sr == doctest::Approx(1e4).epsilon(1e-12));
  CHECK(s.rr == doctest::Approx(10.0).epsilon(1e-12));

  sys.power_r = 0.0;
  CHECK(avg_snrs(sys).rd == 0.0);  // rejected downstream by the BLER evaluators

  sys.gains.noise_r = 0.0;
  CHECK_THROWS_AS(avg_snrs(sys), std::domain_error);
}

TEST_CASE("cdf_exponential basics") {
  CHECK(cdf_exponential(0.0, 2.0) == 0.0);
  CHECK(cdf_exponential(2.0, 2.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(cdf_exponential(1e9, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cdf_exponential(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(cdf_exponential(1.0, 0.0), std::domain_error);
}

TEST_CASE("cdf_fd_relay_sinr shape and reductions") {
  const AvgSnrs s{1e4, 1.0, 10.0};
  CHECK(cdf_fd_relay_sinr(0.0, s) == 0.0);
  CHECK_THROWS_AS(cdf_fd_relay_sinr(-0.5, s), std::domain_error);

  const AvgSnrs nofb{1e4, 1.0, 0.0};
  for (double x = 0.0; x < 5e4; x += 997.0)
    CHECK(cdf_fd_relay_sinr(x, nofb) ==
          doctest::Approx(cdf_exponential(x, 1e4)).epsilon(1e-14));

  double prev = -1.0;
  for (double x = 0.0; x < 1e3; x += 0.5) {
    const double f = cdf_fd_relay_sinr(x, s);
    CHECK(f >= prev);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }

  // matches the textbook form where that form is well-conditioned
  for (double x : {0.1, 1.0, 10.0, 100.0}) {
    const double direct = 1.0 - s.sr * std::exp(-x / s.sr) / (s.sr + s.rr * x);
    CHECK(cdf_fd_relay_sinr(x, s) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("cdf_fd_relay_sinr converges to the exponential CDF as rr -> 0") {
  const AvgSnrs s{1e4, 1.0, 1e-12 * 1e4};
  double max_gap = 0.0;
  for (double x = 0.0; x < 1e5; x += 483.0)
    max_gap = std::max(max_gap, std::abs(cdf_fd_relay_sinr(x, s) - cdf_exponential(x, 1e4)));
  CHECK(max_gap <= 1e-9);
}

TEST_CASE("cdf_fd_relay_sinr against an independent sampler") {
  const AvgSnrs s{1e4, 1.0, 10.0};
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> unit(1.0);
  const int n = 1'000'000;
  const double x0 = 0.414;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double draw = s.sr * unit(rng) / (s.rr * unit(rng) + 1.0);
    if (draw <= x0) ++below;
  }
  const double f = cdf_fd_relay_sinr(x0, s);
  const double se = std::sqrt(f * (1.0 - f) / n);
  CHECK(std::abs(static_cast<double>(below) / n - f) <= 3.0 * se);
}

TEST_CASE("high-SNR CDF approximation") {
  const AvgSnrs s{1e4, 1.0, 10.0};
  CHECK(cdf_fd_relay_sinr_high_snr(0.0, s) == 0.0);
  CHECK(cdf_fd_relay_sinr_high_snr(1.0, s) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(cdf_fd_relay_sinr_high_snr(1e9, s) == 1.0);

  // within 5% of the exact CDF once interference dominates the +1 term
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> rr_dist(25.0, 100.0), x_dist(0.01, 0.6);
  for (int i = 0; i < 200; ++i) {
    AvgSnrs q{0, 1.0, rr_dist(rng)};
    q.sr = q.rr * 1e3 * (1.0 + 9.0 * x_dist(rng));
    const double x = x_dist(rng);
    const double exact = cdf_fd_relay_sinr(x, q);
    const double approx = cdf_fd_relay_sinr_high_snr(x, q);
    CHECK(std::abs(approx - exact) <= 0.05 * exact);
  }
}

TEST_CASE("sampling determinism and distribution") {
  const AvgSnrs s{1e4, 3.16e3, 10.0};
  const auto a = sample_link_snrs(s, DuplexMode::full, 4096, 777);
  const auto b = sample_link_snrs(s, DuplexMode::full, 4096, 777);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].relay == b[i].relay);
    CHECK(a[i].dest == b[i].dest);
  }
  const auto c = sample_link_snrs(s, DuplexMode::full, 4096, 778);
  CHECK(a[0].relay != c[0].relay);

  // law of large numbers for the destination SNR
  const std::size_t n = 1'000'000;
  const auto big = sample_link_snrs(s, DuplexMode::full, n, 999);
  double mean = 0.0;
  for (const auto& d : big) mean += d.dest;
  mean /= static_cast<double>(n);
  CHECK(std::abs(mean - s.rd) <= 0.01 * s.rd);

  // KS of the relay SINR against the analytic CDF at the 1% level
  std::vector<double> relay;
  relay.reserve(100000);
  for (std::size_t i = 0; i < 100000; ++i) relay.push_back(big[i].relay);
  const double d =
      oracles::ks_statistic(relay, [&](double x) { return cdf_fd_relay_sinr(x, s); });
  CHECK(d * std::sqrt(100000.0) < 1.6276);
}

TEST_CASE("half-duplex sampling uses independent per-hop exponentials") {
  const AvgSnrs s{100.0, 50.0, 0.0};
  const auto draws = sample_link_snrs(s, DuplexMode::half, 200000, 5);
  double mr = 0.0, md = 0.0;
  for (const auto& d : draws) {
    mr += d.relay;
    md += d.dest;
  }
  mr /= draws.size();
  md /= draws.size();
  CHECK(std::abs(mr - s.sr) <= 0.02 * s.sr);
  CHECK(std::abs(md - s.rd) <= 0.02 * s.rd);
}
