#include "fblrelay/finite_blocklength.hpp"

#include <cmath>
#include <numbers>

namespace fblrelay {

CodingSpec CodingSpec::fdr(int payload_bits, int block_channel_uses) {
  CodingSpec s{payload_bits, static_cast<double>(block_channel_uses)};
  s.validate();
  return s;
}

CodingSpec CodingSpec::hdr(int payload_bits, int block_channel_uses) {
  CodingSpec s{payload_bits, block_channel_uses / 2.0};
  s.validate();
  return s;
}

void CodingSpec::validate() const {
  if (payload_bits < 1) throw std::domain_error("CodingSpec: payload_bits must be >= 1");
  if (!(blocklength >= 1.0)) throw std::domain_error("CodingSpec: blocklength must be >= 1");
}

std::optional<std::string> validity_warning(const CodingSpec& spec) {
  if (spec.blocklength < 100.0)
    return "per-hop blocklength " + std::to_string(spec.blocklength) +
           " is below the normal-approximation validity floor of 100 channel uses";
  return std::nullopt;
}

double capacity(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("capacity: SNR must be non-negative");
  return std::log1p(snr) * std::numbers::log2e;
}

double dispersion(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("dispersion: SNR must be non-negative");
  const double t = 1.0 + snr;
  const double l2e = std::numbers::log2e;
  return snr * (snr + 2.0) / (t * t) * (l2e * l2e);
}

LinearApproxParams linear_approx_params(const CodingSpec& spec) {
  spec.validate();
  const double r = spec.rate();
  if (!(r > 0.0)) throw std::domain_error("linear_approx_params: rate must be positive");
  const double pow2_2r_m1 = std::expm1(2.0 * r * std::numbers::ln2);  // 2^(2r) - 1
  LinearApproxParams p;
  p.slope_coeff = 1.0 / (2.0 * std::numbers::pi * std::sqrt(pow2_2r_m1));
  p.threshold_snr = std::expm1(r * std::numbers::ln2);  // 2^r - 1
  const double half_width = 1.0 / (2.0 * p.slope_coeff * std::sqrt(spec.blocklength));
  p.ramp_lower = p.threshold_snr - half_width;
  p.ramp_upper = p.threshold_snr + half_width;
  return p;
}

double xi_approx(double snr, const LinearApproxParams& p, double blocklength) {
  if (!(snr >= 0.0)) throw std::domain_error("xi_approx: SNR must be non-negative");
  if (snr <= p.ramp_lower) return 1.0;
  if (snr >= p.ramp_upper) return 0.0;
  const double v = 0.5 - p.slope_coeff * std::sqrt(blocklength) * (snr - p.threshold_snr);
  return std::clamp(v, 0.0, 1.0);
}

double block_error_exact(double snr, const CodingSpec& spec) {
  if (!(snr >= 0.0)) throw std::domain_error("block_error_exact: SNR must be non-negative");
  spec.validate();
  return detail::block_error_from_snr(snr, spec.rate(), spec.blocklength);
}

}  // namespace fblrelay
