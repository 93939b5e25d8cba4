// Command-line front end: bler-sweep, delay-sweep, select, validate.
// Exit codes: 0 success, 2 config error, 3 numerical/convergence error,
// 4 validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fblrelay/config.hpp"
#include "fblrelay/kernels.hpp"
#include "fblrelay/runners.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string format;
  std::string out_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "JSON scenario config");
  cmd->add_option("--format", args->format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", args->out_path, "output file (default stdout)");
  cmd->add_option("--set", args->overrides, "field override key=value (dotted paths)");
  std::uint64_t dummy;
  cmd->add_option_function<std::uint64_t>(
      "--seed", [args](const std::uint64_t& v) { args->seed = v; }, "Monte Carlo seed");
  cmd->add_option_function<std::uint64_t>(
      "--samples", [args](const std::uint64_t& v) { args->samples = v; },
      "Monte Carlo sample count");
  (void)dummy;
}

fblrelay::ScenarioConfig load_config(const CommonArgs& args) {
  fblrelay::ScenarioConfig cfg = args.config_path.empty()
                                     ? fblrelay::default_config()
                                     : fblrelay::parse_config_file(args.config_path);
  fblrelay::apply_overrides(cfg, args.overrides);
  if (args.seed) cfg.monte_carlo.seed = *args.seed;
  if (args.samples) cfg.monte_carlo.samples = *args.samples;
  if (!args.format.empty())
    cfg.format = args.format == "jsonl" ? fblrelay::OutputFormat::jsonl
                                        : fblrelay::OutputFormat::csv;
  fblrelay::validate_config(cfg);
  return cfg;
}

void warn_blocklength(const fblrelay::ScenarioConfig& cfg) {
  const auto spec_h = fblrelay::CodingSpec::hdr(cfg.payload_bits, cfg.blocklength);
  if (auto w = fblrelay::validity_warning(spec_h)) std::cerr << "warning: " << *w << '\n';
}

int with_output(const CommonArgs& args, const std::function<void(std::ostream&)>& body) {
  if (args.out_path.empty()) {
    body(std::cout);
    return 0;
  }
  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << args.out_path << '\n';
    return 2;
  }
  body(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength BLER and delay analysis for full/half-duplex "
               "decode-and-forward relaying"};
  app.require_subcommand(1);

  CommonArgs bler_args, delay_args, select_args, validate_args;
  double select_eps = 0.0;

  CLI::App* bler = app.add_subcommand("bler-sweep", "closed-form/asymptotic/Monte Carlo BLER sweep");
  add_common(bler, &bler_args);
  CLI::App* delay = app.add_subcommand("delay-sweep", "minimum-delay sweep over the BLER target");
  add_common(delay, &delay_args);
  CLI::App* select = app.add_subcommand("select", "duplex-mode decision report");
  add_common(select, &select_args);
  select->add_option("--eps", select_eps, "BLER target (overrides eps_target)");
  CLI::App* validate = app.add_subcommand("validate", "cross-method consistency checks");
  add_common(validate, &validate_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bler->parsed()) {
      const auto cfg = load_config(bler_args);
      warn_blocklength(cfg);
      const auto rows = fblrelay::run_bler_sweep(cfg);
      return with_output(bler_args,
                         [&](std::ostream& os) { fblrelay::write_bler_sweep(os, rows, cfg.format); });
    }
    if (delay->parsed()) {
      const auto cfg = load_config(delay_args);
      const auto rows = fblrelay::run_delay_sweep(cfg);
      return with_output(delay_args, [&](std::ostream& os) {
        fblrelay::write_delay_sweep(os, rows, cfg.format);
      });
    }
    if (select->parsed()) {
      auto cfg = load_config(select_args);
      if (select->count("--eps") > 0) cfg.eps_target = select_eps;
      fblrelay::validate_config(cfg);
      const auto rep = fblrelay::run_select(cfg);
      return with_output(select_args,
                         [&](std::ostream& os) { fblrelay::write_select(os, rep, cfg.format); });
    }
    // validate
    const auto cfg = load_config(validate_args);
    warn_blocklength(cfg);
    const auto rep = fblrelay::run_validate(cfg);
    const int rc = with_output(validate_args,
                               [&](std::ostream& os) { fblrelay::write_validate(os, rep); });
    if (rc != 0) return rc;
    return rep.all_pass() ? 0 : 4;
  } catch (const fblrelay::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const fblrelay::convergence_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
