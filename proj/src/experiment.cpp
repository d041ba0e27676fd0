#include "cvgauss/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <string_view>

#include "cvgauss/fock_oracle.hpp"
#include "cvgauss/homodyne.hpp"
#include "cvgauss/measures.hpp"

namespace cvg {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::array<std::pair<Analysis, std::string_view>, 8> kAnalysisNames{{
    {Analysis::purity, "purity"},
    {Analysis::fidelity, "fidelity"},
    {Analysis::entanglement, "entanglement"},
    {Analysis::reid_drummond, "reid_drummond"},
    {Analysis::region, "region"},
    {Analysis::critical_efficiency, "critical_efficiency"},
    {Analysis::estimation, "estimation"},
    {Analysis::oracle, "oracle"},
}};

std::string_view analysis_name(Analysis a) {
  for (const auto& [value, name] : kAnalysisNames) {
    if (value == a) return name;
  }
  return "?";
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  const double x = value.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError(where + ": must be finite");
  }
  return x;
}

std::uint64_t unsigned_integer(const json& value, const std::string& where) {
  if (!value.is_number_unsigned()) {
    throw ConfigError(where + ": expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

std::size_t mode_index(const json& value, std::size_t modes, const std::string& where) {
  const auto m = unsigned_integer(value, where);
  if (m >= modes) {
    throw ConfigError(where + ": mode " + std::to_string(m) + " out of range for " + std::to_string(modes) + " modes");
  }
  return static_cast<std::size_t>(m);
}

std::pair<std::size_t, std::size_t> mode_pair(const json& value, std::size_t modes, const std::string& where) {
  if (!value.is_array() || value.size() != 2) {
    throw ConfigError(where + ": expected a pair of mode indices");
  }
  const auto a = mode_index(value[0], modes, where);
  const auto b = mode_index(value[1], modes, where);
  if (a == b) {
    throw ConfigError(where + ": modes must be distinct");
  }
  return {a, b};
}

double squeezing(const json& value, const std::string& where) {
  const double s = number(value, where);
  if (std::abs(s) > 10.0) {
    throw ConfigError(where + ": squeezing must lie in [-10, 10]");
  }
  return s;
}

Recipe parse_recipe(const json& doc, const std::string& where) {
  check_keys(doc, {"modes", "thermal", "steps"}, where);
  Recipe recipe;
  if (doc.contains("thermal") == doc.contains("modes")) {
    throw ConfigError(where + ": give exactly one of 'modes' (vacuum inputs) or 'thermal'");
  }
  if (doc.contains("thermal")) {
    const auto& thermal = doc.at("thermal");
    if (!thermal.is_array()) {
      throw ConfigError(where + ".thermal: expected an array of occupations");
    }
    for (std::size_t i = 0; i < thermal.size(); ++i) {
      // Occupations below 1 are a physics error reported at run time, not here.
      recipe.occupations.push_back(number(thermal[i], where + ".thermal[" + std::to_string(i) + "]"));
    }
  } else {
    recipe.occupations.assign(static_cast<std::size_t>(unsigned_integer(doc.at("modes"), where + ".modes")), 1.0);
  }
  const std::size_t n = recipe.modes();
  if (n == 0 || n > kMaxModes) {
    throw ConfigError(where + ": mode count must be 1, 2 or 3");
  }
  if (!doc.contains("steps")) {
    return recipe;
  }
  const auto& steps = doc.at("steps");
  if (!steps.is_array()) {
    throw ConfigError(where + ".steps: expected an array");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string at = where + ".steps[" + std::to_string(i) + "]";
    const auto& step = steps[i];
    if (!step.is_object() || !step.contains("op") || !step.at("op").is_string()) {
      throw ConfigError(at + ": expected an object with a string 'op'");
    }
    const auto op = step.at("op").get<std::string>();
    if (op == "squeeze") {
      check_keys(step, {"op", "mode", "s"}, at);
      recipe.steps.emplace_back(Squeeze{mode_index(require(step, "mode", at), n, at + ".mode"),
                                        squeezing(require(step, "s", at), at + ".s")});
    } else if (op == "rotate") {
      check_keys(step, {"op", "mode", "phi"}, at);
      recipe.steps.emplace_back(Rotate{mode_index(require(step, "mode", at), n, at + ".mode"),
                                       number(require(step, "phi", at), at + ".phi")});
    } else if (op == "two_mode_squeeze") {
      check_keys(step, {"op", "modes", "s"}, at);
      const auto [a, b] = mode_pair(require(step, "modes", at), n, at + ".modes");
      recipe.steps.emplace_back(TwoModeSqueeze{a, b, squeezing(require(step, "s", at), at + ".s")});
    } else if (op == "beam_split") {
      check_keys(step, {"op", "modes", "theta"}, at);
      const auto [a, b] = mode_pair(require(step, "modes", at), n, at + ".modes");
      recipe.steps.emplace_back(BeamSplit{a, b, number(require(step, "theta", at), at + ".theta")});
    } else if (op == "displace") {
      check_keys(step, {"op", "mode", "dq", "dp"}, at);
      recipe.steps.emplace_back(Displacement{mode_index(require(step, "mode", at), n, at + ".mode"),
                                             step.contains("dq") ? number(step.at("dq"), at + ".dq") : 0.0,
                                             step.contains("dp") ? number(step.at("dp"), at + ".dp") : 0.0});
    } else {
      throw ConfigError(at + ": unknown op '" + op + "'");
    }
  }
  return recipe;
}

GridAxis parse_axis(const json& doc, const std::string& where) {
  check_keys(doc, {"min", "max", "steps"}, where);
  GridAxis axis;
  if (doc.contains("min")) axis.min = number(doc.at("min"), where + ".min");
  if (doc.contains("max")) axis.max = number(doc.at("max"), where + ".max");
  if (doc.contains("steps")) axis.steps = static_cast<std::size_t>(unsigned_integer(doc.at("steps"), where + ".steps"));
  if (!(axis.min > 0.0 && axis.min <= axis.max && axis.max <= 4.0)) {
    throw ConfigError(where + ": grid must satisfy 0 < min <= max <= 4");
  }
  if (axis.steps == 0) {
    throw ConfigError(where + ".steps: must be positive");
  }
  return axis;
}

json recipe_to_json(const Recipe& recipe) {
  json steps = json::array();
  for (const auto& step : recipe.steps) {
    steps.push_back(std::visit(
        Overloaded{
            [](const Squeeze& op) { return json{{"op", "squeeze"}, {"mode", op.mode}, {"s", op.s}}; },
            [](const Rotate& op) { return json{{"op", "rotate"}, {"mode", op.mode}, {"phi", op.phi}}; },
            [](const TwoModeSqueeze& op) {
              return json{{"op", "two_mode_squeeze"}, {"modes", {op.mode_a, op.mode_b}}, {"s", op.s}};
            },
            [](const BeamSplit& op) {
              return json{{"op", "beam_split"}, {"modes", {op.mode_a, op.mode_b}}, {"theta", op.theta}};
            },
            [](const Displacement& op) { return json{{"op", "displace"}, {"mode", op.mode}, {"dq", op.dq}, {"dp", op.dp}}; },
        },
        step));
  }
  return json{{"thermal", recipe.occupations}, {"steps", steps}};
}

json row_major(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j));
    }
  }
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json estimate_json(const MomentEstimate& e) {
  return json{{"value", e.value}, {"standard_error", e.standard_error}, {"shots", e.shots}};
}

json purity_json(const PurityResult& p) {
  return json{{"P", p.purity}, {"M", p.mixedness}, {"M_quad", p.mixedness_quadratic}};
}

json params_json(const StandardFormParams& p) {
  return json{{"n1", p.n1},          {"n2", p.n2},          {"c1", p.c1},
              {"c2", p.c2},          {"delta1", p.delta1()}, {"delta2", p.delta2()}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<StandardFormParams> standard_form_or_none(const GaussianState& state) {
  if (state.modes() != 2) return std::nullopt;
  try {
    return to_standard_form_params(state);
  } catch (const FormMismatch&) {
    return std::nullopt;
  }
}

}  // namespace

double GridAxis::at(std::size_t i) const {
  if (steps <= 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

bool ExperimentConfig::wants(Analysis a) const {
  return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, {"state", "reference", "efficiency", "shots", "seed", "analyses", "sweep", "oracle", "output"},
             "config");
  ExperimentConfig config;
  config.state = parse_recipe(require(doc, "state", "config"), "state");
  if (doc.contains("reference")) {
    config.reference = parse_recipe(doc.at("reference"), "reference");
  }
  if (doc.contains("efficiency")) {
    config.efficiency = number(doc.at("efficiency"), "efficiency");
    if (!(config.efficiency > 0.0 && config.efficiency <= 1.0)) {
      throw ConfigError("efficiency: must lie in (0, 1]");
    }
  }
  if (doc.contains("shots")) {
    config.shots = static_cast<std::size_t>(unsigned_integer(doc.at("shots"), "shots"));
    if (config.shots < 2) {
      throw ConfigError("shots: need at least 2");
    }
  }
  if (doc.contains("seed")) {
    config.seed = unsigned_integer(doc.at("seed"), "seed");
  }
  if (doc.contains("analyses")) {
    const auto& list = doc.at("analyses");
    if (!list.is_array()) throw ConfigError("analyses: expected an array of names");
    for (const auto& item : list) {
      if (!item.is_string()) throw ConfigError("analyses: expected strings");
      const auto name = item.get<std::string>();
      const auto it = std::find_if(kAnalysisNames.begin(), kAnalysisNames.end(),
                                   [&](const auto& entry) { return entry.second == name; });
      if (it == kAnalysisNames.end()) throw ConfigError("analyses: unknown analysis '" + name + "'");
      if (!config.wants(it->first)) config.analyses.push_back(it->first);
    }
  }
  if (doc.contains("sweep")) {
    const auto& sweep = doc.at("sweep");
    check_keys(sweep, {"delta1", "delta2", "etas"}, "sweep");
    if (sweep.contains("delta1")) config.sweep.delta1 = parse_axis(sweep.at("delta1"), "sweep.delta1");
    if (sweep.contains("delta2")) config.sweep.delta2 = parse_axis(sweep.at("delta2"), "sweep.delta2");
    if (sweep.contains("etas")) {
      if (!sweep.at("etas").is_array()) throw ConfigError("sweep.etas: expected an array");
      for (const auto& e : sweep.at("etas")) {
        const double eta = number(e, "sweep.etas");
        if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("sweep.etas: values must lie in (0, 1]");
        config.sweep.etas.push_back(eta);
      }
    }
  }
  if (doc.contains("oracle")) {
    const auto& oracle = doc.at("oracle");
    check_keys(oracle, {"cutoff"}, "oracle");
    if (oracle.contains("cutoff")) {
      config.oracle_cutoff = static_cast<std::size_t>(unsigned_integer(oracle.at("cutoff"), "oracle.cutoff"));
    }
  }
  if (doc.contains("output")) {
    const auto& output = doc.at("output");
    check_keys(output, {"report", "sweep"}, "output");
    for (const auto* key : {"report", "sweep"}) {
      if (output.contains(key) && !output.at(key).is_string()) {
        throw ConfigError(std::string("output.") + key + ": expected a file name");
      }
    }
    if (output.contains("report")) config.report_file = output.at("report").get<std::string>();
    if (output.contains("sweep")) config.sweep_file = output.at("sweep").get<std::string>();
  }

  const std::size_t n = config.state.modes();
  for (const Analysis a : {Analysis::entanglement, Analysis::reid_drummond, Analysis::region,
                           Analysis::critical_efficiency, Analysis::estimation}) {
    if (config.wants(a) && n != 2 && !(a == Analysis::estimation && config.wants(Analysis::fidelity))) {
      throw ConfigError("analysis '" + std::string(analysis_name(a)) + "' needs a two-mode state");
    }
  }
  if (config.wants(Analysis::fidelity)) {
    if (n != 1 || !config.reference || config.reference->modes() != 1) {
      throw ConfigError("analysis 'fidelity' needs a single-mode state and a single-mode 'reference'");
    }
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& config) {
  json analyses = json::array();
  for (const Analysis a : config.analyses) analyses.push_back(analysis_name(a));
  auto axis = [](const GridAxis& g) { return json{{"min", g.min}, {"max", g.max}, {"steps", g.steps}}; };
  json doc{{"state", recipe_to_json(config.state)},
           {"efficiency", config.efficiency},
           {"shots", config.shots},
           {"seed", config.seed},
           {"analyses", analyses},
           {"sweep", {{"delta1", axis(config.sweep.delta1)}, {"delta2", axis(config.sweep.delta2)}, {"etas", config.sweep.etas}}},
           {"output", {{"report", config.report_file}, {"sweep", config.sweep_file}}}};
  if (config.reference) doc["reference"] = recipe_to_json(*config.reference);
  if (config.oracle_cutoff) doc["oracle"] = {{"cutoff", *config.oracle_cutoff}};
  return doc;
}

json run(const ExperimentConfig& config) {
  const GaussianState state = build_state(config.state);
  const auto physical = validate_physical(state);
  if (!physical.physical) {
    throw UnphysicalState("configured state violates the uncertainty principle (min eigenvalue of V + i*Omega = " +
                          std::to_string(physical.min_eigenvalue) + ")");
  }

  json truth{{"modes", state.modes()},
             {"covariance", row_major(state.covariance())},
             {"displacement", vector_json(state.means())},
             {"physicality", {{"physical", physical.physical}, {"min_eigenvalue", physical.min_eigenvalue}}}};
  const auto params = standard_form_or_none(state);
  if (state.modes() == 2) {
    truth["standard_form"] = params ? params_json(*params) : json(nullptr);
  }

  if (config.wants(Analysis::purity)) {
    truth["purity"] = purity_json(purity(state));
    if (params) {
      const auto mix = mixedness_separability(*params);
      json block{{"precondition_met", mix.precondition_met}, {"rhs", mix.rhs}};
      if (mix.precondition_met) {
        block["separable"] = *mix.separable;
        block["lhs_quadratic"] = mix.lhs_quadratic;
        block["lhs_linear"] = mix.lhs_linear;
        block["separable_linear"] = mix.separable_linear;
      } else {
        block["separable"] = nullptr;
      }
      truth["mixedness_separability"] = block;
    }
  }

  const bool any_entanglement = config.wants(Analysis::entanglement) || config.wants(Analysis::reid_drummond) ||
                                config.wants(Analysis::region) || config.wants(Analysis::critical_efficiency);
  if (any_entanglement) {
    const auto report = analyze_entanglement(state);
    json block;
    if (config.wants(Analysis::entanglement)) {
      block["E_sympl"] = report.e_sympl;
      block["trace_norm"] = report.trace_norm;
      block["nu_tilde"] = report.nu_tilde;
      block["separable"] = report.separable;
      block["E_lemma1"] = report.e_lemma1 ? json(*report.e_lemma1) : json(nullptr);
    }
    if (config.wants(Analysis::region)) {
      block["region"] = report.region ? json(std::string(to_string(*report.region))) : json(nullptr);
    }
    if (config.wants(Analysis::critical_efficiency)) {
      block["eta_critical"] = report.eta_critical ? json(*report.eta_critical) : json(nullptr);
    }
    if (config.wants(Analysis::reid_drummond)) {
      block["reid_drummond"] = report.reid_drummond ? json(*report.reid_drummond) : json(nullptr);
    }
    truth["entanglement"] = block;
  }

  if (config.wants(Analysis::fidelity)) {
    const GaussianState reference = build_state(*config.reference);
    require_physical(reference);
    const auto closed = fidelity_closed_form(state, reference);
    truth["fidelity"] = {
        {"closed_form", closed.value},
        {"beam_splitter_w0", fidelity_via_bs(state, reference).value},
        {"homodyne_expression", fidelity_homodyne_expression(diagonalized_output_moments(state, reference)).value},
        {"is_overlap", closed.is_overlap},
        {"reference", {{"covariance", row_major(reference.covariance())}, {"displacement", vector_json(reference.means())}}}};
  }

  json report{{"schema", kReportSchema},
              {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"generated_at", utc_timestamp()},
              {"seed", config.seed},
              {"config", to_json(config)},
              {"true_state", truth}};

  if (config.wants(Analysis::estimation)) {
    json est{{"efficiency", config.efficiency}, {"shots", config.shots}, {"seed", config.seed}};
    if (state.modes() == 2) {
      const auto delta = estimate_delta(state, config.efficiency, config.shots, config.seed);
      est["delta1"] = estimate_json(delta.delta1);
      est["delta2"] = estimate_json(delta.delta2);
      est["region"] = std::string(to_string(classify_region(delta.delta1.value, delta.delta2.value)));
      const auto v = reconstruct_variance(state, config.efficiency, config.shots, config.seed + 1);
      est["covariance"] = {{"values", row_major(v.covariance)},
                           {"standard_errors", row_major(v.standard_error)},
                           {"means", vector_json(v.means)},
                           {"means_standard_errors", vector_json(v.means_standard_error)},
                           {"shots_per_setting", v.shots_per_setting}};
      est["covariance_inverted"] = {{"values", row_major(*v.inverted)},
                                    {"standard_errors", row_major(*v.inverted_standard_error)},
                                    {"shots_per_setting", v.shots_per_setting}};
    } else {
      const GaussianState reference = build_state(*config.reference);
      const auto f = estimate_fidelity(state, reference, config.efficiency, config.shots, config.seed);
      est["fidelity"] = estimate_json(f.fidelity);
      est["output_mean_q"] = estimate_json(f.mean_q);
      est["output_mean_p"] = estimate_json(f.mean_p);
      est["output_variance_q"] = estimate_json(f.variance_q);
      est["output_variance_p"] = estimate_json(f.variance_p);
    }
    report["estimated"] = est;
  }

  if (config.wants(Analysis::oracle)) {
    report["oracle_check"] = oracle_check(config);
  }
  return report;
}

json oracle_check(const ExperimentConfig& config) {
  const GaussianState state = build_state(config.state);
  require_physical(state);
  FockDensity rho;
  try {
    rho = config.oracle_cutoff ? oracle_build(config.state, *config.oracle_cutoff) : oracle_build(config.state);
  } catch (const CutoffTooSmall& e) {
    return json{{"warning", std::string("cutoff too small: ") + e.what()}};
  } catch (const std::invalid_argument& e) {
    return json{{"warning", std::string("recipe not representable by the oracle: ") + e.what()}};
  }
  const auto oracle_moments = oracle_variance(rho);
  const double p_closed = purity(state).purity;
  const double p_oracle = oracle_purity(rho);
  json block{{"cutoff", rho.cutoff},
             {"tail_mass", rho.tail_mass},
             {"trace_deficit", rho.trace_deficit},
             {"purity", {{"closed_form", p_closed}, {"oracle", p_oracle}, {"abs_diff", std::abs(p_closed - p_oracle)}}},
             {"covariance", {{"max_abs_diff", (oracle_moments.covariance() - state.covariance()).cwiseAbs().maxCoeff()}}},
             {"displacement", {{"max_abs_diff", (oracle_moments.means() - state.means()).cwiseAbs().maxCoeff()}}}};
  if (state.modes() == 2) {
    const double e_sympl = negativity_sympl(state).value;
    const double e_oracle = oracle_negativity(rho);
    json neg{{"E_sympl", e_sympl}, {"E_oracle", e_oracle}, {"abs_diff", std::abs(e_sympl - e_oracle)}};
    if (const auto params = standard_form_or_none(state)) {
      neg["E_lemma1"] = negativity_lemma1(*params);
    }
    block["negativity"] = neg;
  }
  if (state.modes() == 1 && config.reference && config.reference->modes() == 1) {
    const GaussianState reference = build_state(*config.reference);
    try {
      const FockDensity ref_rho =
          config.oracle_cutoff ? oracle_build(*config.reference, *config.oracle_cutoff) : oracle_build(*config.reference);
      const double closed = fidelity_closed_form(state, reference).value;
      const auto oracle = oracle_fidelity(rho, ref_rho);
      block["fidelity"] = {{"closed_form", closed},
                           {"oracle", oracle.value},
                           {"abs_diff", std::abs(closed - oracle.value)},
                           {"is_overlap", oracle.is_overlap}};
    } catch (const CutoffTooSmall& e) {
      block["fidelity"] = {{"warning", std::string("cutoff too small for the reference: ") + e.what()}};
    }
  }
  return block;
}

std::vector<SweepRow> sweep_region_map(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  rows.reserve(spec.delta1.steps * spec.delta2.steps);
  for (std::size_t i = 0; i < spec.delta1.steps; ++i) {
    for (std::size_t j = 0; j < spec.delta2.steps; ++j) {
      SweepRow row{spec.delta1.at(i), spec.delta2.at(j), Region::S, std::nullopt, {}};
      row.region = classify_region(row.delta1, row.delta2);
      if (row.region != Region::S) {
        row.eta_critical = critical_efficiency(row.delta1, row.delta2);
      }
      for (const double eta : spec.etas) {
        const double d1 = eta * row.delta1 + 1.0 - eta;
        const double d2 = eta * row.delta2 + 1.0 - eta;
        row.detected.push_back(classify_region(d1, d2) != Region::S);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "delta1,delta2,region,eta_critical";
  for (const double eta : spec.etas) out << ",detected_eta_" << eta;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (const auto& row : rows) {
    out << row.delta1 << ',' << row.delta2 << ',' << to_string(row.region) << ',';
    if (row.eta_critical) out << *row.eta_critical;
    for (const bool d : row.detected) out << ',' << (d ? 1 : 0);
    out << '\n';
  }
  out.precision(old_precision);
}

json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json detected = json::object();
    for (std::size_t k = 0; k < spec.etas.size(); ++k) {
      detected[std::to_string(spec.etas[k])] = static_cast<bool>(row.detected[k]);
    }
    out.push_back({{"delta1", row.delta1},
                   {"delta2", row.delta2},
                   {"region", std::string(to_string(row.region))},
                   {"eta_critical", row.eta_critical ? json(*row.eta_critical) : json(nullptr)},
                   {"detected", detected}});
  }
  return json{{"etas", spec.etas}, {"rows", out}};
}

}  // namespace cvg
