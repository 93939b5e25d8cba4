#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fblrelay/bler.hpp"
#include "fblrelay/config.hpp"
#include "fblrelay/duplex_select.hpp"

namespace fblrelay {

struct BlerSweepRow {
  double axis = 0;
  BlerEstimate fdr_closed, hdr_closed, fdr_asym, hdr_asym, fdr_mc, hdr_mc;
  bool clamped_any = false;
};

struct DelaySweepRow {
  double eps = 0;
  double delay_fdr = 0;
  double delay_hdr = 0;
  double gap = 0;
  ModeChoice winner = ModeChoice::fdr;
};

struct SelectReport {
  DuplexComparison comparison;
  PowerPair fdr_powers;
  PowerPair hdr_powers;
  double eps_target = 0;
  double budget_w = 0;
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
};

std::vector<BlerSweepRow> run_bler_sweep(const ScenarioConfig& cfg);
std::vector<DelaySweepRow> run_delay_sweep(const ScenarioConfig& cfg);
SelectReport run_select(const ScenarioConfig& cfg);
ValidationReport run_validate(const ScenarioConfig& cfg);

// Writers. Floating point is emitted with 17 significant digits so output is
// lossless and byte-stable across runs.
void write_bler_sweep(std::ostream& os, const std::vector<BlerSweepRow>& rows, OutputFormat f);
void write_delay_sweep(std::ostream& os, const std::vector<DelaySweepRow>& rows, OutputFormat f);
void write_select(std::ostream& os, const SelectReport& report, OutputFormat f);
void write_validate(std::ostream& os, const ValidationReport& report);

const char* mode_name(ModeChoice m);

}  // namespace fblrelay
