#include "fblrelay/runners.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "fblrelay/quadrature.hpp"
#include "fblrelay/special_functions.hpp"

namespace fblrelay {

namespace {

// Linear-unit view of a scenario at one sweep point.
struct Scenario {
  SystemParams sys;
  LinkGains gains;
  int payload_bits;
  int blocklength;
};

Scenario materialize(const ScenarioConfig& cfg) {
  Scenario sc;
  sc.gains.omega_sr = db_to_linear(cfg.omega_sr_db);
  sc.gains.omega_rd = db_to_linear(cfg.omega_rd_db);
  sc.gains.omega_rr = cfg.omega_rr_zero ? 0.0 : db_to_linear(cfg.omega_rr_db);
  sc.gains.noise_r = dbm_to_watts(cfg.noise_r_dbm);
  sc.gains.noise_d = dbm_to_watts(cfg.noise_d_dbm);
  sc.sys.gains = sc.gains;
  sc.sys.power_s = dbm_to_watts(cfg.power_s_dbm);
  sc.sys.power_r = dbm_to_watts(cfg.power_r_dbm);
  sc.payload_bits = cfg.payload_bits;
  sc.blocklength = cfg.blocklength;
  return sc;
}

std::vector<double> axis_points(const SweepAxis& axis) {
  std::vector<double> pts;
  const double span = axis.stop - axis.start;
  const long nsteps = std::lround(std::floor(span / axis.step + 1e-9));
  for (long k = 0; k <= nsteps; ++k) pts.push_back(axis.start + axis.step * k);
  return pts;
}

std::uint64_t row_seed(std::uint64_t seed, std::uint64_t row) {
  // decorrelate rows while keeping the whole sweep a pure function of seed
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (row + 1));
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  return z;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const char* mode_name(ModeChoice m) {
  switch (m) {
    case ModeChoice::fdr: return "FDR";
    case ModeChoice::hdr: return "HDR";
    default: return "tie";
  }
}

std::vector<BlerSweepRow> run_bler_sweep(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (!cfg.sweep) throw config_error("sweep", "bler-sweep needs a sweep axis");
  const std::string& var = cfg.sweep->variable;
  if (var == "eps") throw config_error("sweep.variable", "eps axis belongs to delay-sweep");

  const std::vector<double> pts = axis_points(*cfg.sweep);
  std::vector<BlerSweepRow> rows;
  rows.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ScenarioConfig point = cfg;
    if (var == "power_s_dbm")
      point.power_s_dbm = pts[i];
    else if (var == "power_r_dbm")
      point.power_r_dbm = pts[i];
    else if (var == "omega_rr_db")
      point.omega_rr_db = pts[i];
    else if (var == "blocklength")
      point.blocklength = static_cast<int>(std::lround(pts[i]));
    else if (var == "payload_bits")
      point.payload_bits = static_cast<int>(std::lround(pts[i]));
    const Scenario sc = materialize(point);
    const AvgSnrs snrs = avg_snrs(sc.sys);
    const CodingSpec spec_f = CodingSpec::fdr(sc.payload_bits, sc.blocklength);
    const CodingSpec spec_h = CodingSpec::hdr(sc.payload_bits, sc.blocklength);

    BlerSweepRow row;
    row.axis = pts[i];
    row.fdr_closed = bler_fdr_closed(snrs, spec_f);
    row.hdr_closed = bler_hdr_closed(snrs, spec_h);
    row.fdr_asym = bler_fdr_asymptotic(snrs, sc.payload_bits, sc.blocklength);
    row.hdr_asym = bler_hdr_asymptotic(snrs, sc.payload_bits, sc.blocklength);
    const std::uint64_t rs = row_seed(cfg.monte_carlo.seed, i);
    row.fdr_mc = bler_monte_carlo(snrs, DuplexMode::full, spec_f, cfg.monte_carlo.samples, rs);
    row.hdr_mc = bler_monte_carlo(snrs, DuplexMode::half, spec_h, cfg.monte_carlo.samples, rs);
    row.clamped_any = row.fdr_closed.clamped || row.hdr_closed.clamped ||
                      row.fdr_asym.clamped || row.hdr_asym.clamped;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DelaySweepRow> run_delay_sweep(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (!cfg.sweep || cfg.sweep->variable != "eps")
    throw config_error("sweep.variable", "delay-sweep needs an eps sweep (log10 units)");
  if (!cfg.power_budget_dbm)
    throw config_error("power_budget_dbm", "delay-sweep needs a power budget");
  const Scenario sc = materialize(cfg);
  const PowerBudget budget{dbm_to_watts(*cfg.power_budget_dbm)};
  const double coeff_a = fdr_asym_coeff(sc.gains, budget);
  const double coeff_b = hdr_asym_coeff(sc.gains, budget);

  std::vector<DelaySweepRow> rows;
  for (double exponent : axis_points(*cfg.sweep)) {
    DelaySweepRow row;
    row.eps = std::pow(10.0, exponent);
    row.delay_fdr = min_blocklength(row.eps, sc.payload_bits, coeff_a, DuplexMode::full);
    row.delay_hdr = min_blocklength(row.eps, sc.payload_bits, coeff_b, DuplexMode::half);
    row.gap = row.delay_fdr - row.delay_hdr;
    row.winner = select_mode(row.eps, coeff_a, coeff_b);
    rows.push_back(row);
  }
  return rows;
}

SelectReport run_select(const ScenarioConfig& cfg) {
  validate_config(cfg);
  if (!cfg.eps_target) throw config_error("eps_target", "select needs a BLER target");
  if (!cfg.power_budget_dbm)
    throw config_error("power_budget_dbm", "select needs a power budget");
  const Scenario sc = materialize(cfg);
  SelectReport rep;
  rep.eps_target = *cfg.eps_target;
  rep.budget_w = dbm_to_watts(*cfg.power_budget_dbm);
  const PowerBudget budget{rep.budget_w};
  rep.comparison = compare_duplex(rep.eps_target, sc.payload_bits, sc.gains, budget);
  rep.fdr_powers = optimal_powers_fdr(sc.gains, budget);
  rep.hdr_powers = optimal_powers_hdr(budget);
  return rep;
}

ValidationReport run_validate(const ScenarioConfig& cfg) {
  validate_config(cfg);
  const Scenario sc = materialize(cfg);
  const AvgSnrs snrs = avg_snrs(sc.sys);
  const CodingSpec spec_f = CodingSpec::fdr(sc.payload_bits, sc.blocklength);
  const CodingSpec spec_h = CodingSpec::hdr(sc.payload_bits, sc.blocklength);
  const LinearApproxParams pf = linear_approx_params(spec_f);
  const LinearApproxParams ph = linear_approx_params(spec_h);

  ValidationReport rep;
  auto add = [&rep](const std::string& name, bool pass, std::string detail) {
    rep.checks.push_back(ValidationCheck{name, pass, std::move(detail)});
  };

  // closed forms against the generic CDF quadrature
  {
    const BlerEstimate closed = hop_bler_fdr_sr_closed(snrs, pf, spec_f.blocklength);
    const BlerEstimate quad = hop_bler_quadrature(
        [&](double x) { return cdf_fd_relay_sinr(x, snrs); }, pf, spec_f.blocklength,
        cfg.quad_rel_tol);
    const double d = rel_diff(closed.value, quad.value);
    add("quadrature-vs-closed-form (full-duplex S-R hop)", d <= 1e-6,
        "rel diff " + fmt17(d));
  }
  {
    const BlerEstimate closed = hop_bler_rayleigh_closed(snrs.rd, pf, spec_f.blocklength);
    const BlerEstimate quad = hop_bler_quadrature(
        [&](double x) { return cdf_exponential(x, snrs.rd); }, pf, spec_f.blocklength,
        cfg.quad_rel_tol);
    const double d = rel_diff(closed.value, quad.value);
    add("quadrature-vs-closed-form (Rayleigh R-D hop)", d <= 1e-6, "rel diff " + fmt17(d));
  }

  // combiner identities
  {
    const BlerEstimate e1 = hop_bler_fdr_sr_closed(snrs, pf, spec_f.blocklength);
    const BlerEstimate e2 = hop_bler_rayleigh_closed(snrs.rd, pf, spec_f.blocklength);
    const double product_form = 1.0 - (1.0 - e1.value) * (1.0 - e2.value);
    const double combined = bler_fdr_closed(snrs, spec_f).value;
    add("full-duplex product form equals DF combination",
        std::abs(product_form - combined) <= 1e-12, "abs diff " + fmt17(product_form - combined));
  }
  {
    const BlerEstimate e1 = hop_bler_rayleigh_closed(snrs.sr, ph, spec_h.blocklength);
    const BlerEstimate e2 = hop_bler_rayleigh_closed(snrs.rd, ph, spec_h.blocklength);
    const double product_form = 1.0 - (1.0 - e1.value) * (1.0 - e2.value);
    const double combined = bler_hdr_closed(snrs, spec_h).value;
    add("half-duplex product form equals DF combination",
        std::abs(product_form - combined) <= 1e-12, "abs diff " + fmt17(product_form - combined));
  }

  // Monte Carlo agreement at the configured operating point
  {
    const BlerEstimate mc = bler_monte_carlo(snrs, DuplexMode::full, spec_f,
                                             cfg.monte_carlo.samples, cfg.monte_carlo.seed);
    const BlerEstimate closed = bler_fdr_closed(snrs, spec_f);
    const double bound = std::max(3.0 * mc.ci_halfwidth, 0.005);
    const bool applies = mc.value >= 1e-3;
    add("Monte Carlo vs closed form (full duplex)",
        !applies || std::abs(mc.value - closed.value) <= bound,
        applies ? "abs diff " + fmt17(std::abs(mc.value - closed.value)) + " bound " + fmt17(bound)
                : "skipped: estimate below 1e-3");
  }
  {
    const BlerEstimate mc = bler_monte_carlo(snrs, DuplexMode::half, spec_h,
                                             cfg.monte_carlo.samples, cfg.monte_carlo.seed);
    const BlerEstimate closed = bler_hdr_closed(snrs, spec_h);
    const double bound = std::max(3.0 * mc.ci_halfwidth, 0.005);
    const bool applies = mc.value >= 1e-3;
    add("Monte Carlo vs closed form (half duplex)",
        !applies || std::abs(mc.value - closed.value) <= bound,
        applies ? "abs diff " + fmt17(std::abs(mc.value - closed.value)) + " bound " + fmt17(bound)
                : "skipped: estimate below 1e-3");
  }

  // asymptote convergence at high source power with optimal relay power
  {
    const double pc = dbm_to_watts(40.0);
    const PowerBudget budget{pc};
    const PowerPair pf_opt = optimal_powers_fdr(sc.gains, budget);
    SystemParams hi = sc.sys;
    hi.power_s = pf_opt.source_w;
    hi.power_r = pf_opt.relay_w;
    const AvgSnrs sh = avg_snrs(hi);
    const double ratio_f = bler_fdr_asymptotic(sh, sc.payload_bits, sc.blocklength).value /
                           bler_fdr_closed(sh, spec_f).value;
    hi.power_r = pc;
    const AvgSnrs shh = avg_snrs(hi);
    const double ratio_h = bler_hdr_asymptotic(shh, sc.payload_bits, sc.blocklength).value /
                           bler_hdr_closed(shh, spec_h).value;
    const bool ok = std::abs(ratio_f - 1.0) <= 0.10 && std::abs(ratio_h - 1.0) <= 0.10;
    add("asymptote within 10% of closed form at 40 dBm", ok,
        "ratios " + fmt17(ratio_f) + " / " + fmt17(ratio_h));
  }

  // interference-free reduction
  if (snrs.rr == 0.0) {
    const double a = hop_bler_fdr_sr_closed(snrs, pf, spec_f.blocklength).value;
    const double b = hop_bler_rayleigh_closed(snrs.sr, pf, spec_f.blocklength).value;
    add("zero loop interference reduces to the Rayleigh hop", a == b,
        "values " + fmt17(a) + " / " + fmt17(b));
  } else {
    const double a = hop_bler_fdr_sr_closed(snrs, pf, spec_f.blocklength).value;
    const double b = hop_bler_rayleigh_closed(snrs.sr, pf, spec_f.blocklength).value;
    add("loop interference does not improve the S-R hop", a >= b - 1e-12,
        "values " + fmt17(a) + " / " + fmt17(b));
  }

  return rep;
}

// ---------------------------------------------------------------------------
// writers

void write_bler_sweep(std::ostream& os, const std::vector<BlerSweepRow>& rows, OutputFormat f) {
  if (f == OutputFormat::csv) {
    os << "axis,eps_f_cf,eps_h_cf,eps_f_asym,eps_h_asym,eps_f_mc,eps_f_ci,eps_h_mc,eps_h_ci,"
          "clamped\n";
    for (const auto& r : rows) {
      os << fmt17(r.axis) << ',' << fmt17(r.fdr_closed.value) << ',' << fmt17(r.hdr_closed.value)
         << ',' << fmt17(r.fdr_asym.value) << ',' << fmt17(r.hdr_asym.value) << ','
         << fmt17(r.fdr_mc.value) << ',' << fmt17(r.fdr_mc.ci_halfwidth) << ','
         << fmt17(r.hdr_mc.value) << ',' << fmt17(r.hdr_mc.ci_halfwidth) << ','
         << (r.clamped_any ? 1 : 0) << '\n';
    }
    return;
  }
  for (const auto& r : rows) {
    os << "{\"axis\":" << fmt17(r.axis) << ",\"eps_f_cf\":" << fmt17(r.fdr_closed.value)
       << ",\"eps_h_cf\":" << fmt17(r.hdr_closed.value)
       << ",\"eps_f_asym\":" << fmt17(r.fdr_asym.value)
       << ",\"eps_h_asym\":" << fmt17(r.hdr_asym.value)
       << ",\"eps_f_mc\":" << fmt17(r.fdr_mc.value)
       << ",\"eps_f_ci\":" << fmt17(r.fdr_mc.ci_halfwidth)
       << ",\"eps_h_mc\":" << fmt17(r.hdr_mc.value)
       << ",\"eps_h_ci\":" << fmt17(r.hdr_mc.ci_halfwidth)
       << ",\"clamped\":" << (r.clamped_any ? "true" : "false") << "}\n";
  }
}

void write_delay_sweep(std::ostream& os, const std::vector<DelaySweepRow>& rows, OutputFormat f) {
  if (f == OutputFormat::csv) {
    os << "eps,delta_f,delta_h,delta_gap,winner\n";
    for (const auto& r : rows)
      os << fmt17(r.eps) << ',' << fmt17(r.delay_fdr) << ',' << fmt17(r.delay_hdr) << ','
         << fmt17(r.gap) << ',' << mode_name(r.winner) << '\n';
    return;
  }
  for (const auto& r : rows)
    os << "{\"eps\":" << fmt17(r.eps) << ",\"delta_f\":" << fmt17(r.delay_fdr)
       << ",\"delta_h\":" << fmt17(r.delay_hdr) << ",\"delta_gap\":" << fmt17(r.gap)
       << ",\"winner\":\"" << mode_name(r.winner) << "\"}\n";
}

void write_select(std::ostream& os, const SelectReport& rep, OutputFormat f) {
  const DuplexComparison& c = rep.comparison;
  if (f == OutputFormat::csv) {
    os << "eps_target: " << fmt17(rep.eps_target) << '\n';
    os << "budget_w: " << fmt17(rep.budget_w) << '\n';
    os << "coeff_fdr: " << fmt17(c.coeff_a) << '\n';
    os << "coeff_hdr: " << fmt17(c.coeff_b) << '\n';
    os << "eps_star: " << (c.critical ? fmt17(*c.critical) : std::string("absent")) << '\n';
    os << "delta_f: " << fmt17(c.delay_fdr) << '\n';
    os << "delta_h: " << fmt17(c.delay_hdr) << '\n';
    os << "delta_gap: " << fmt17(c.gap) << '\n';
    os << "fdr_power_s_w: " << fmt17(rep.fdr_powers.source_w) << '\n';
    os << "fdr_power_r_w: " << fmt17(rep.fdr_powers.relay_w) << '\n';
    os << "hdr_power_s_w: " << fmt17(rep.hdr_powers.source_w) << '\n';
    os << "hdr_power_r_w: " << fmt17(rep.hdr_powers.relay_w) << '\n';
    os << "mode: " << mode_name(c.mode) << '\n';
    return;
  }
  os << "{\"eps_target\":" << fmt17(rep.eps_target) << ",\"budget_w\":" << fmt17(rep.budget_w)
     << ",\"coeff_fdr\":" << fmt17(c.coeff_a) << ",\"coeff_hdr\":" << fmt17(c.coeff_b)
     << ",\"eps_star\":" << (c.critical ? fmt17(*c.critical) : std::string("null"))
     << ",\"delta_f\":" << fmt17(c.delay_fdr) << ",\"delta_h\":" << fmt17(c.delay_hdr)
     << ",\"delta_gap\":" << fmt17(c.gap) << ",\"fdr_power_s_w\":" << fmt17(rep.fdr_powers.source_w)
     << ",\"fdr_power_r_w\":" << fmt17(rep.fdr_powers.relay_w)
     << ",\"mode\":\"" << mode_name(c.mode) << "\"}\n";
}

void write_validate(std::ostream& os, const ValidationReport& rep) {
  for (const auto& c : rep.checks)
    os << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name << "  (" << c.detail << ")\n";
  os << (rep.all_pass() ? "validation passed" : "validation FAILED") << " (" << rep.checks.size()
     << " checks)\n";
}

}  // namespace fblrelay
