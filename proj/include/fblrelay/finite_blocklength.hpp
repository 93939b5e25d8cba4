#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "fblrelay/special_functions.hpp"

namespace fblrelay {

// One coded packet: sigma payload bits over `blocklength` channel uses.
// For full-duplex relaying each hop sees the whole block; for half-duplex
// each hop gets half the block at twice the rate, so the half-duplex spec
// carries blocklength m/2 and rate 2*sigma/m.
struct CodingSpec {
  int payload_bits = 0;
  double blocklength = 0;  // channel uses per hop; real-valued so odd m halves cleanly

  double rate() const { return static_cast<double>(payload_bits) / blocklength; }

  static CodingSpec fdr(int payload_bits, int block_channel_uses);
  static CodingSpec hdr(int payload_bits, int block_channel_uses);

  void validate() const;
};

// Warns (does not reject) below the validity floor of the normal
// approximation; callers decide whether to surface it.
std::optional<std::string> validity_warning(const CodingSpec& spec);

// Constants of the piecewise-linear ramp that stands in for the Q-based
// per-realization error probability: 1 below ramp_lower, 0 above
// ramp_upper, linear with slope -slope_coeff*sqrt(m) in between, centered
// at threshold_snr = 2^r - 1.
struct LinearApproxParams {
  double slope_coeff = 0;    // 1 / (2*pi*sqrt(2^(2r) - 1))
  double threshold_snr = 0;  // 2^r - 1
  double ramp_lower = 0;     // threshold - 1/(2*slope*sqrt(m)); may be negative
  double ramp_upper = 0;     // threshold + 1/(2*slope*sqrt(m))
};

// Shannon capacity in bits per channel use.
double capacity(double snr);

// Channel dispersion in bits^2 per channel use.
double dispersion(double snr);

LinearApproxParams linear_approx_params(const CodingSpec& spec);

// Ramp value at a given SNR; in [0,1], continuous.
double xi_approx(double snr, const LinearApproxParams& p, double blocklength);

namespace detail {

// Normal-approximation block error probability for one fading realization.
// Shared between the module-level API and the scalar batch kernel so both
// take the identical code path.
inline double block_error_from_snr(double snr, double rate, double blocklength) {
  if (snr <= 0.0) return 1.0;  // zero capacity, positive rate
  const double t = 1.0 + snr;
  const double nu = snr * (snr + 2.0) / (t * t);  // 1 - 1/(1+snr)^2, stable for small snr
  const double corr = (snr - (t - 1.0)) / t;
  const double log1p_snr = std::log(t) + corr;
  double arg = std::sqrt(blocklength) * (log1p_snr - rate * std::numbers::ln2) / std::sqrt(nu);
  arg = std::clamp(arg, -39.0, 39.0);
  return 0.5 * std::erfc(arg * (1.0 / std::numbers::sqrt2));
}

}  // namespace detail

// Q((C(snr) - r) / sqrt(V(snr)/m)); returns 1 at snr == 0 by continuity.
double block_error_exact(double snr, const CodingSpec& spec);

}  // namespace fblrelay
