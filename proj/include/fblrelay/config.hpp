#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fblrelay/errors.hpp"

namespace fblrelay {

enum class OutputFormat { csv, jsonl };

struct SweepAxis {
  std::string variable;  // power_s_dbm | power_r_dbm | omega_rr_db | blocklength |
                         // payload_bits | eps (start/stop/step in log10(eps))
  double start = 0;
  double stop = 0;
  double step = 0;
};

struct MonteCarloSettings {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 123456789;  // documented default
};

// Log-unit scenario description; the only place dB/dBm conversion happens.
struct ScenarioConfig {
  double omega_sr_db = -80.0;
  double omega_rd_db = -85.0;
  double omega_rr_db = -110.0;  // -inf (perfect cancellation) spelled as JSON null
  bool omega_rr_zero = false;
  double noise_r_dbm = -90.0;
  double noise_d_dbm = -90.0;
  double power_s_dbm = 20.0;
  double power_r_dbm = 20.0;
  std::optional<double> power_budget_dbm;  // required by delay-sweep / select
  int payload_bits = 256;
  int blocklength = 512;
  std::optional<SweepAxis> sweep;
  MonteCarloSettings monte_carlo;
  double quad_rel_tol = 1e-9;
  std::optional<double> eps_target;
  OutputFormat format = OutputFormat::csv;

  bool operator==(const ScenarioConfig&) const = default;
};

// dB/dBm conversions (the single conversion point of the tool).
double db_to_linear(double db);     // 10^(db/10)
double dbm_to_watts(double dbm);    // 10^((dbm-30)/10)

ScenarioConfig default_config();

// Parses a JSON config file; unknown fields are rejected. Throws config_error
// with the dotted field path on any problem.
ScenarioConfig parse_config_file(const std::string& path);
ScenarioConfig parse_config_text(const std::string& json_text);

// Serializes back to JSON; parse(emit(cfg)) == cfg for all valid configs.
std::string emit_config(const ScenarioConfig& cfg);

// Applies "key=value" overrides with dotted paths (e.g. sweep.start=10,
// monte_carlo.samples=100000), then re-validates.
void apply_overrides(ScenarioConfig& cfg, const std::vector<std::string>& overrides);

void validate_config(const ScenarioConfig& cfg);

}  // namespace fblrelay
