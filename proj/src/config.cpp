#include "fblrelay/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fblrelay {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

ScenarioConfig default_config() {
  ScenarioConfig cfg;
  cfg.sweep = SweepAxis{"power_s_dbm", 10.0, 30.0, 1.0};
  cfg.power_budget_dbm = 30.0;
  cfg.eps_target = 1e-3;
  return cfg;
}

namespace {

const std::set<std::string> kTopKeys = {
    "omega_sr_db", "omega_rd_db", "omega_rr_db",  "noise_r_dbm",  "noise_d_dbm",
    "power_s_dbm", "power_r_dbm", "power_budget_dbm", "payload_bits", "blocklength",
    "sweep",       "monte_carlo", "quad_rel_tol", "eps_target",   "format"};

const std::set<std::string> kSweepVars = {"power_s_dbm", "power_r_dbm", "omega_rr_db",
                                          "blocklength", "payload_bits", "eps"};

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw config_error(path, "expected a number");
  return j.get<double>();
}

ScenarioConfig from_json(const json& j) {
  if (!j.is_object()) throw config_error("", "config root must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!kTopKeys.count(key)) throw config_error(key, "unknown field");

  ScenarioConfig cfg;
  auto num = [&](const char* key, double* dst) {
    if (j.contains(key)) *dst = require_number(j.at(key), key);
  };
  num("omega_sr_db", &cfg.omega_sr_db);
  num("omega_rd_db", &cfg.omega_rd_db);
  if (j.contains("omega_rr_db")) {
    if (j.at("omega_rr_db").is_null()) {
      cfg.omega_rr_zero = true;  // perfect interference cancellation
    } else {
      cfg.omega_rr_db = require_number(j.at("omega_rr_db"), "omega_rr_db");
      cfg.omega_rr_zero = false;
    }
  }
  num("noise_r_dbm", &cfg.noise_r_dbm);
  num("noise_d_dbm", &cfg.noise_d_dbm);
  num("power_s_dbm", &cfg.power_s_dbm);
  num("power_r_dbm", &cfg.power_r_dbm);
  if (j.contains("power_budget_dbm"))
    cfg.power_budget_dbm = require_number(j.at("power_budget_dbm"), "power_budget_dbm");
  if (j.contains("payload_bits")) {
    if (!j.at("payload_bits").is_number_integer())
      throw config_error("payload_bits", "expected an integer");
    cfg.payload_bits = j.at("payload_bits").get<int>();
  }
  if (j.contains("blocklength")) {
    if (!j.at("blocklength").is_number_integer())
      throw config_error("blocklength", "expected an integer");
    cfg.blocklength = j.at("blocklength").get<int>();
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    if (!s.is_object()) throw config_error("sweep", "expected an object");
    for (const auto& [key, _] : s.items())
      if (key != "variable" && key != "start" && key != "stop" && key != "step")
        throw config_error("sweep." + key, "unknown field");
    SweepAxis axis;
    if (!s.contains("variable") || !s.at("variable").is_string())
      throw config_error("sweep.variable", "expected a string");
    axis.variable = s.at("variable").get<std::string>();
    for (const char* key : {"start", "stop", "step"})
      if (!s.contains(key)) throw config_error(std::string("sweep.") + key, "missing field");
    axis.start = require_number(s.at("start"), "sweep.start");
    axis.stop = require_number(s.at("stop"), "sweep.stop");
    axis.step = require_number(s.at("step"), "sweep.step");
    cfg.sweep = axis;
  }
  if (j.contains("monte_carlo")) {
    const json& m = j.at("monte_carlo");
    if (!m.is_object()) throw config_error("monte_carlo", "expected an object");
    for (const auto& [key, _] : m.items())
      if (key != "samples" && key != "seed")
        throw config_error("monte_carlo." + key, "unknown field");
    if (m.contains("samples")) {
      if (!m.at("samples").is_number_unsigned() && !m.at("samples").is_number_integer())
        throw config_error("monte_carlo.samples", "expected a non-negative integer");
      cfg.monte_carlo.samples = m.at("samples").get<std::uint64_t>();
    }
    if (m.contains("seed")) {
      if (!m.at("seed").is_number_unsigned() && !m.at("seed").is_number_integer())
        throw config_error("monte_carlo.seed", "expected a non-negative integer");
      cfg.monte_carlo.seed = m.at("seed").get<std::uint64_t>();
    }
  }
  num("quad_rel_tol", &cfg.quad_rel_tol);
  if (j.contains("eps_target"))
    cfg.eps_target = require_number(j.at("eps_target"), "eps_target");
  if (j.contains("format")) {
    const std::string f = j.at("format").get<std::string>();
    if (f == "csv")
      cfg.format = OutputFormat::csv;
    else if (f == "jsonl")
      cfg.format = OutputFormat::jsonl;
    else
      throw config_error("format", "must be \"csv\" or \"jsonl\"");
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.payload_bits < 1) throw config_error("payload_bits", "must be >= 1");
  if (cfg.blocklength < 2) throw config_error("blocklength", "must be >= 2");
  if (!(cfg.quad_rel_tol > 0.0)) throw config_error("quad_rel_tol", "must be positive");
  if (cfg.monte_carlo.samples < 10'000)
    throw config_error("monte_carlo.samples", "must be >= 10000");
  if (cfg.sweep) {
    if (!kSweepVars.count(cfg.sweep->variable))
      throw config_error("sweep.variable", "unknown sweep variable '" + cfg.sweep->variable + "'");
    if (!(cfg.sweep->step > 0.0)) throw config_error("sweep.step", "must be positive");
    if (cfg.sweep->stop < cfg.sweep->start)
      throw config_error("sweep.stop", "sweep range is empty");
  }
  if (cfg.eps_target && !(*cfg.eps_target > 0.0 && *cfg.eps_target < 1.0))
    throw config_error("eps_target", "must lie in (0,1)");
}

ScenarioConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error("", std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("", "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string emit_config(const ScenarioConfig& cfg) {
  json j;
  j["omega_sr_db"] = cfg.omega_sr_db;
  j["omega_rd_db"] = cfg.omega_rd_db;
  if (cfg.omega_rr_zero)
    j["omega_rr_db"] = nullptr;
  else
    j["omega_rr_db"] = cfg.omega_rr_db;
  j["noise_r_dbm"] = cfg.noise_r_dbm;
  j["noise_d_dbm"] = cfg.noise_d_dbm;
  j["power_s_dbm"] = cfg.power_s_dbm;
  j["power_r_dbm"] = cfg.power_r_dbm;
  if (cfg.power_budget_dbm) j["power_budget_dbm"] = *cfg.power_budget_dbm;
  j["payload_bits"] = cfg.payload_bits;
  j["blocklength"] = cfg.blocklength;
  if (cfg.sweep) {
    j["sweep"] = {{"variable", cfg.sweep->variable},
                  {"start", cfg.sweep->start},
                  {"stop", cfg.sweep->stop},
                  {"step", cfg.sweep->step}};
  }
  j["monte_carlo"] = {{"samples", cfg.monte_carlo.samples}, {"seed", cfg.monte_carlo.seed}};
  j["quad_rel_tol"] = cfg.quad_rel_tol;
  if (cfg.eps_target) j["eps_target"] = *cfg.eps_target;
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "jsonl";
  return j.dump(2);
}

void apply_overrides(ScenarioConfig& cfg, const std::vector<std::string>& overrides) {
  if (overrides.empty()) return;
  json j = json::parse(emit_config(cfg));
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw config_error(kv, "override must look like key=value");
    std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;  // bare strings allowed, e.g. sweep.variable=eps
    }
    // resolve dotted path
    json::json_pointer ptr;
    std::string rest = key;
    while (!rest.empty()) {
      const auto dot = rest.find('.');
      ptr /= rest.substr(0, dot);
      if (dot == std::string::npos) break;
      rest = rest.substr(dot + 1);
    }
    j[ptr] = parsed;
  }
  cfg = from_json(j);
}

}  // namespace fblrelay
