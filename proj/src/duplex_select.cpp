#include "fblrelay/duplex_select.hpp"

#include <cmath>
#include <numbers>

namespace fblrelay {

void PowerBudget::validate() const {
  if (!(peak_power_w > 0.0)) throw std::domain_error("PowerBudget: peak power must be positive");
}

PowerPair optimal_powers_fdr(const LinkGains& gains, const PowerBudget& budget) {
  gains.validate();
  budget.validate();
  const double pc = budget.peak_power_w;
  if (gains.omega_rr == 0.0) return PowerPair{pc, pc};
  const double interior =
      std::sqrt(pc * gains.omega_sr * gains.noise_d / (gains.omega_rr * gains.omega_rd));
  return PowerPair{pc, std::min(pc, interior)};
}

PowerPair optimal_powers_hdr(const PowerBudget& budget) {
  budget.validate();
  return PowerPair{budget.peak_power_w, budget.peak_power_w};
}

double fdr_asym_coeff(const LinkGains& gains, const PowerBudget& budget) {
  const PowerPair p = optimal_powers_fdr(gains, budget);
  return p.relay_w * gains.omega_rr / (budget.peak_power_w * gains.omega_sr) +
         gains.noise_d / (p.relay_w * gains.omega_rd);
}

double hdr_asym_coeff(const LinkGains& gains, const PowerBudget& budget) {
  gains.validate();
  budget.validate();
  return (gains.noise_r / gains.omega_sr + gains.noise_d / gains.omega_rd) /
         budget.peak_power_w;
}

double min_blocklength(double eps, int payload_bits, double coeff, DuplexMode mode) {
  if (eps == 0.0)
    throw std::domain_error("min_blocklength: zero BLER target needs unbounded delay");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::domain_error("min_blocklength: BLER target must lie in (0,1)");
  if (payload_bits < 1) throw std::domain_error("min_blocklength: payload must be >= 1 bit");
  if (!(coeff > 0.0)) throw std::domain_error("min_blocklength: coefficient must be positive");
  const double log2_term = std::log1p(eps / coeff) * std::numbers::log2e;
  const double sigma = static_cast<double>(payload_bits);
  return mode == DuplexMode::full ? sigma / log2_term : 2.0 * sigma / log2_term;
}

double delay_gap(double eps, int payload_bits, double coeff_a, double coeff_b) {
  return min_blocklength(eps, payload_bits, coeff_a, DuplexMode::full) -
         min_blocklength(eps, payload_bits, coeff_b, DuplexMode::half);
}

std::optional<double> critical_bler(double coeff_a, double coeff_b) {
  if (!(coeff_a > 0.0) || !(coeff_b > 0.0))
    throw std::domain_error("critical_bler: coefficients must be positive");
  if (coeff_a < 2.0 * coeff_b) return std::nullopt;
  return coeff_a / coeff_b * (coeff_a - 2.0 * coeff_b);
}

ModeChoice select_mode(double eps_target, double coeff_a, double coeff_b) {
  if (!(eps_target > 0.0) || !(eps_target < 1.0))
    throw std::domain_error("select_mode: BLER target must lie in (0,1)");
  const std::optional<double> star = critical_bler(coeff_a, coeff_b);
  if (!star) return ModeChoice::fdr;
  const double scale = std::max(eps_target, *star);
  if (std::abs(eps_target - *star) <= 1e-12 * scale) return ModeChoice::tie;
  return eps_target > *star ? ModeChoice::fdr : ModeChoice::hdr;
}

DuplexComparison compare_duplex(double eps, int payload_bits, const LinkGains& gains,
                                const PowerBudget& budget) {
  DuplexComparison c;
  c.coeff_a = fdr_asym_coeff(gains, budget);
  c.coeff_b = hdr_asym_coeff(gains, budget);
  c.delay_fdr = min_blocklength(eps, payload_bits, c.coeff_a, DuplexMode::full);
  c.delay_hdr = min_blocklength(eps, payload_bits, c.coeff_b, DuplexMode::half);
  c.gap = c.delay_fdr - c.delay_hdr;
  c.critical = critical_bler(c.coeff_a, c.coeff_b);
  c.mode = select_mode(eps, c.coeff_a, c.coeff_b);
  return c;
}

}  // namespace fblrelay
