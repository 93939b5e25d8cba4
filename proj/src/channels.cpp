#include "fblrelay/channels.hpp"

#include <cmath>

#include "fblrelay/kernels.hpp"

namespace fblrelay {

void LinkGains::validate() const {
  if (!(omega_sr > 0.0) || !(omega_rd > 0.0))
    throw std::domain_error("LinkGains: omega_sr and omega_rd must be positive");
  if (!(omega_rr >= 0.0)) throw std::domain_error("LinkGains: omega_rr must be >= 0");
  if (!(noise_r > 0.0) || !(noise_d > 0.0))
    throw std::domain_error("LinkGains: noise powers must be positive");
}

void SystemParams::validate() const {
  gains.validate();
  if (!(power_s >= 0.0) || !(power_r >= 0.0))
    throw std::domain_error("SystemParams: powers must be non-negative");
}

AvgSnrs avg_snrs(const SystemParams& sys) {
  sys.validate();
  return AvgSnrs{sys.power_s * sys.gains.omega_sr / sys.gains.noise_r,
                 sys.power_r * sys.gains.omega_rd / sys.gains.noise_d,
                 sys.power_r * sys.gains.omega_rr / sys.gains.noise_r};
}

double cdf_exponential(double x, double mean) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_exponential: x must be >= 0");
  if (!(mean > 0.0)) throw std::domain_error("cdf_exponential: mean must be positive");
  return -std::expm1(-x / mean);
}

double cdf_fd_relay_sinr(double x, const AvgSnrs& s) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_fd_relay_sinr: x must be >= 0");
  if (!(s.sr > 0.0) || !(s.rr >= 0.0))
    throw std::domain_error("cdf_fd_relay_sinr: invalid average SNRs");
  // 1 - sr e^(-x/sr)/(sr + rr x) rewritten so tiny CDF values keep full
  // relative precision.
  return -std::expm1(-(x / s.sr + std::log1p(s.rr * x / s.sr)));
}

double cdf_fd_relay_sinr_high_snr(double x, const AvgSnrs& s) {
  if (!(x >= 0.0)) throw std::domain_error("cdf_fd_relay_sinr_high_snr: x must be >= 0");
  const double v = s.rr / s.sr * x;
  return v > 1.0 ? 1.0 : v;
}

void sample_relay_dest_snrs(const AvgSnrs& s, DuplexMode mode, std::uint64_t seed,
                            std::uint64_t first, std::size_t n, double* relay, double* dest) {
  const auto& k = kernels::ops();
  if (mode == DuplexMode::full) {
    // relay buffer temporarily holds X, dest holds Y, then both are combined.
    k.unit_exponentials(seed, 0, first, n, relay);
    k.unit_exponentials(seed, 1, first, n, dest);
    k.fd_relay_sinr(relay, dest, n, s.sr, s.rr, relay);
    k.unit_exponentials(seed, 2, first, n, dest);
    for (std::size_t i = 0; i < n; ++i) dest[i] *= s.rd;
  } else {
    k.unit_exponentials(seed, 0, first, n, relay);
    k.unit_exponentials(seed, 1, first, n, dest);
    for (std::size_t i = 0; i < n; ++i) relay[i] *= s.sr;
    for (std::size_t i = 0; i < n; ++i) dest[i] *= s.rd;
  }
}

std::vector<SnrDraw> sample_link_snrs(const AvgSnrs& s, DuplexMode mode, std::size_t n,
                                      std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample_link_snrs: n must be >= 1");
  std::vector<double> relay(n), dest(n);
  sample_relay_dest_snrs(s, mode, seed, 0, n, relay.data(), dest.data());
  std::vector<SnrDraw> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = SnrDraw{relay[i], dest[i]};
  return out;
}

}  // namespace fblrelay
