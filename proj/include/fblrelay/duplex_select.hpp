#pragma once

#include <optional>

#include "fblrelay/channels.hpp"

namespace fblrelay {

struct PowerBudget {
  double peak_power_w = 0;  // per-node peak transmit power constraint

  void validate() const;
};

struct PowerPair {
  double source_w = 0;
  double relay_w = 0;
};

enum class ModeChoice { fdr, hdr, tie };

// High-SNR optimal transmit powers under individual peak constraints.
// Full duplex: source at the peak, relay balancing loop interference against
// R-D quality; half duplex: both at the peak.
PowerPair optimal_powers_fdr(const LinkGains& gains, const PowerBudget& budget);
PowerPair optimal_powers_hdr(const PowerBudget& budget);

// Asymptotic BLER coefficients at optimal powers: BLER_F ~ A*(2^(sigma/m)-1),
// BLER_H ~ B*(2^(2 sigma/m)-1).
double fdr_asym_coeff(const LinkGains& gains, const PowerBudget& budget);  // A
double hdr_asym_coeff(const LinkGains& gains, const PowerBudget& budget);  // B

// Minimum blocklength (channel uses, real-valued) meeting BLER target eps.
double min_blocklength(double eps, int payload_bits, double coeff, DuplexMode mode);

// delta_F - delta_H; negative means full duplex needs the shorter block.
double delay_gap(double eps, int payload_bits, double coeff_a, double coeff_b);

// BLER at which the two modes need equal blocklength: (A/B)(A - 2B) when
// A >= 2B, absent otherwise (full duplex wins at every target).
std::optional<double> critical_bler(double coeff_a, double coeff_b);

// Remark-style selection: FDR when the critical BLER is absent or the target
// is looser than it, HDR when stricter, tie within 1e-12 relative.
ModeChoice select_mode(double eps_target, double coeff_a, double coeff_b);

struct DuplexComparison {
  double coeff_a = 0;
  double coeff_b = 0;
  double delay_fdr = 0;
  double delay_hdr = 0;
  double gap = 0;  // delay_fdr - delay_hdr
  std::optional<double> critical;
  ModeChoice mode = ModeChoice::fdr;
};

DuplexComparison compare_duplex(double eps, int payload_bits, const LinkGains& gains,
                                const PowerBudget& budget);

}  // namespace fblrelay
