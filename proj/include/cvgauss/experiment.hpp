#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cvgauss/entanglement.hpp"
#include "cvgauss/recipe.hpp"

namespace cvg {

inline constexpr const char* kToolName = "cvtool";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "cvgauss.report/1";

/// Malformed or inconsistent configuration (CLI exit code 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Analysis { purity, fidelity, entanglement, reid_drummond, region, critical_efficiency, estimation, oracle };

struct GridAxis {
  double min = 0.04;
  double max = 4.0;
  std::size_t steps = 100;

  double at(std::size_t i) const;
};

struct SweepSpec {
  GridAxis delta1;
  GridAxis delta2;
  /// Efficiencies at which to report whether the entanglement test still fires.
  std::vector<double> etas;
};

struct ExperimentConfig {
  Recipe state;
  std::optional<Recipe> reference;
  double efficiency = 1.0;
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
  std::vector<Analysis> analyses;
  SweepSpec sweep;
  std::optional<std::size_t> oracle_cutoff;
  std::string report_file = "report.json";
  std::string sweep_file = "sweep.csv";

  bool wants(Analysis a) const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Normalized echo of a configuration, as embedded in reports.
nlohmann::json to_json(const ExperimentConfig& config);

/// Builds the state, computes every requested quantity and returns the report.
/// Throws UnphysicalState if the configured state is unphysical.
nlohmann::json run(const ExperimentConfig& config);

/// Side-by-side closed-form vs Fock-oracle values. Cutoff problems and
/// unsupported recipes become a {"warning": ...} block.
nlohmann::json oracle_check(const ExperimentConfig& config);

struct SweepRow {
  double delta1;
  double delta2;
  Region region;
  std::optional<double> eta_critical;
  /// Per SweepSpec::etas: loss-degraded delta1' delta2' < 1.
  std::vector<bool> detected;
};

std::vector<SweepRow> sweep_region_map(const SweepSpec& spec);

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows, std::ostream& out);
nlohmann::json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace cvg
