// cvtool: build a Gaussian state from a JSON config, run the simulated
// homodyne measurements and emit reports.
//
// Exit codes: 0 success, 2 unphysical state, 3 configuration/usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cvgauss/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUnphysical = 2;
constexpr int kExitConfig = 3;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "json";
};

void emit(const std::string& text, const Options& opts, const std::string& file_name) {
  if (opts.out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(opts.out_dir);
  const auto path = std::filesystem::path(opts.out_dir) / file_name;
  std::ofstream out(path);
  if (!out) {
    throw cvg::ConfigError("cannot write " + path.string());
  }
  out << text;
  std::cerr << "wrote " << path.string() << '\n';
}

cvg::ExperimentConfig load(const Options& opts) {
  auto config = cvg::load_config(opts.config);
  if (opts.seed) {
    config.seed = *opts.seed;
  }
  return config;
}

int cmd_run(const Options& opts) {
  if (opts.format != "json") {
    throw cvg::ConfigError("run only supports --format json");
  }
  const auto config = load(opts);
  emit(cvg::run(config).dump(2) + "\n", opts, config.report_file);
  return kExitOk;
}

int cmd_sweep(const Options& opts) {
  const auto config = load(opts);
  const auto rows = cvg::sweep_region_map(config.sweep);
  if (opts.format == "csv") {
    std::ostringstream out;
    cvg::write_sweep_csv(config.sweep, rows, out);
    emit(out.str(), opts, config.sweep_file);
  } else {
    const auto name = std::filesystem::path(config.sweep_file).replace_extension(".json").string();
    emit(cvg::sweep_to_json(config.sweep, rows).dump(2) + "\n", opts, name);
  }
  return kExitOk;
}

int cmd_oracle_check(const Options& opts) {
  if (opts.format != "json") {
    throw cvg::ConfigError("oracle-check only supports --format json");
  }
  const auto config = load(opts);
  emit(cvg::oracle_check(config).dump(2) + "\n", opts, "oracle_check.json");
  return kExitOk;
}

int cmd_validate(const Options& opts) {
  load(opts);
  std::cout << "config ok\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state yardsticks: fidelity, purity and entanglement from covariance data"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--config", opts.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Override the config seed");
    sub->add_option("--out", opts.out_dir, "Write output files into this directory instead of stdout");
    if (with_format) {
      sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    }
  };
  auto* run = app.add_subcommand("run", "Compute true-state quantities and simulated estimates");
  auto* sweep = app.add_subcommand("sweep", "Region map over a (delta1, delta2) grid");
  auto* oracle = app.add_subcommand("oracle-check", "Compare closed forms with the Fock-space oracle");
  auto* validate = app.add_subcommand("validate-config", "Parse and validate a config");
  add_common(run, true);
  add_common(sweep, true);
  add_common(oracle, true);
  add_common(validate, false);
  sweep->callback([&] { opts.format = sweep->count("--format") ? opts.format : "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*oracle) return cmd_oracle_check(opts);
    if (*validate) return cmd_validate(opts);
  } catch (const cvg::UnphysicalState& e) {
    std::cerr << "unphysical state: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const cvg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitConfig;
}
