#include "mbnsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mbnsim/error.hpp"

namespace mbnsim {

using nlohmann::json;

std::string_view to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::RateVsK: return "rate_vs_k";
    case OutputKind::AssocVsN: return "assoc_vs_n";
    case OutputKind::SeRateVsN: return "se_rate_vs_n";
    case OutputKind::DceVsN: return "dce_vs_n";
    case OutputKind::Table: return "table";
  }
  return "?";
}

namespace {

template <class E, std::size_t N>
std::optional<E> enum_from(std::string_view s, const E (&all)[N]) {
  for (E e : all)
    if (to_string(e) == s) return e;
  return std::nullopt;
}

constexpr Architecture kArchs[] = {Architecture::SA, Architecture::Int};
constexpr Policy kPolicies[] = {Policy::MaxRate, Policy::MaxSinr, Policy::MaxRsrp, Policy::Biased};
constexpr SweepVariable kVariables[] = {SweepVariable::AbsorptionK, SweepVariable::NumBs,
                                        SweepVariable::ThzBandwidth, SweepVariable::TargetRate};
constexpr SaCountMode kCountModes[] = {SaCountMode::PerBand, SaCountMode::Total};
constexpr PlannerMode kModes[] = {PlannerMode::IntMBN, PlannerMode::SaEqual, PlannerMode::SaFlexible};
constexpr OutputKind kKinds[] = {OutputKind::RateVsK, OutputKind::AssocVsN, OutputKind::SeRateVsN,
                                 OutputKind::DceVsN, OutputKind::Table};

constexpr RfFading kFadings[] = {RfFading::Rayleigh, RfFading::None};

// Reads fields out of one JSON object, recording a field-level message for
// each problem and, at the end, for every key that was never consumed.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) error("", "must be an object");
  }

  ~Reader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, _] : obj_.items())
      if (!seen_.contains(key)) error(key, "unknown key");
  }

  bool has(const std::string& key) const { return obj_.is_object() && obj_.contains(key) && !obj_.at(key).is_null(); }

  const json* take(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) return nullptr;
    return &obj_.at(key);
  }

  void number(const std::string& key, double& out) {
    if (const json* v = take(key)) {
      if (v->is_number()) out = v->get<double>();
      else error(key, "must be a number");
    }
  }

  template <class T>
  void count(const std::string& key, T& out) {
    if (const json* v = take(key)) {
      if (v->is_number_unsigned()) out = v->get<T>();
      else if (v->is_number_integer() && v->get<std::int64_t>() >= 0) out = static_cast<T>(v->get<std::int64_t>());
      else if (v->is_number_float() && v->get<double>() >= 0 && std::floor(v->get<double>()) == v->get<double>())
        out = static_cast<T>(v->get<double>());
      else error(key, "must be a nonnegative integer");
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = take(key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else error(key, "must be true or false");
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = take(key)) {
      if (v->is_string()) out = v->get<std::string>();
      else error(key, "must be a string");
    }
  }

  template <class E, std::size_t N>
  void enumeration(const std::string& key, E& out, const E (&all)[N]) {
    if (const json* v = take(key)) parse_enum(key, *v, out, all);
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = take(key)) {
      if (!v->is_array()) return error(key, "must be an array of numbers");
      out.clear();
      for (const auto& x : *v) {
        if (!x.is_number()) return error(key, "must be an array of numbers");
        out.push_back(x.get<double>());
      }
    }
  }

  template <class E, std::size_t N>
  void enumerations(const std::string& key, std::vector<E>& out, const E (&all)[N]) {
    if (const json* v = take(key)) {
      if (!v->is_array()) return error(key, "must be an array");
      out.clear();
      for (const auto& x : *v) {
        E e{};
        if (parse_enum(key, x, e, all)) out.push_back(e);
      }
    }
  }

  void error(const std::string& key, const std::string& msg) {
    std::string where = path_;
    if (!key.empty()) where += (where.empty() ? "" : ".") + key;
    errors_.push_back(where + ": " + msg);
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <class E, std::size_t N>
  bool parse_enum(const std::string& key, const json& v, E& out, const E (&all)[N]) {
    if (v.is_string())
      if (auto e = enum_from(v.get<std::string>(), all)) {
        out = *e;
        return true;
      }
    std::string allowed;
    for (E e : all) allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(e));
    error(key, "must be one of {" + allowed + "}");
    return false;
  }

  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

void collect(std::vector<std::string>& errors, const std::string& prefix, auto&& check) {
  try {
    check();
  } catch (const ConfigError& e) {
    for (const auto& f : e.field_errors()) errors.push_back(prefix + f);
  }
}

ChannelParams read_channel(const json& j, std::vector<std::string>& errors) {
  ChannelParams p;
  Reader r(j, "channel", errors);
  r.number("f_rf", p.f_rf);
  r.number("f_thz", p.f_thz);
  r.number("b_rf", p.b_rf);
  r.number("b_thz", p.b_thz);
  r.number("p_tx_rf", p.p_tx_rf);
  r.number("p_tx_thz", p.p_tx_thz);
  r.number("g_thz_db", p.g_thz_db);
  r.number("g_rf_db", p.g_rf_db);
  r.number("k_abs", p.k_abs);
  r.number("p_align", p.p_align);
  r.number("noise_psd", p.noise_psd);
  r.number("noise_figure_db", p.noise_figure_db);
  r.number("pathloss_exp_rf", p.pathloss_exp_rf);
  r.enumeration("rf_fading", p.rf_fading, kFadings);
  return p;
}

DeploymentSpec read_deployment(const json& j, std::vector<std::string>& errors) {
  DeploymentSpec d = DeploymentSpec::stand_alone(30, 30);
  Reader r(j, "deployment", errors);
  r.enumeration("architecture", d.architecture, kArchs);
  r.count("n_rf", d.n_rf);
  r.count("n_thz", d.n_thz);
  r.count("n_hyb", d.n_hyb);
  r.number("region_radius", d.region_radius);
  return d;
}

CostModel read_costs(const json& j, std::vector<std::string>& errors) {
  CostModel c;
  Reader r(j, "costs", errors);
  r.number("capex_rbs", c.capex_rbs);
  r.number("capex_tbs", c.capex_tbs);
  r.number("capex_hyb", c.capex_hyb);
  r.number("opex_rbs", c.opex_rbs);
  r.number("opex_tbs", c.opex_tbs);
  r.number("opex_hyb", c.opex_hyb);
  r.boolean("include_opex", c.include_opex);
  return c;
}

SweepConfig read_sweep(const json& j, const std::string& path, std::vector<std::string>& errors) {
  SweepConfig s;
  Reader r(j, path, errors);
  r.string("name", s.name);
  r.enumeration("kind", s.kind, kKinds);
  r.enumeration("variable", s.variable, kVariables);
  r.numbers("values", s.values);
  if (const json* series = r.take("series")) {
    SeriesAxis axis;
    Reader sr(*series, r.child("series"), errors);
    sr.enumeration("variable", axis.variable, kVariables);
    sr.numbers("values", axis.values);
    s.series = axis;
  }
  r.enumerations("architectures", s.architectures, kArchs);
  r.enumerations("policies", s.policies, kPolicies);
  r.count("trials_per_point", s.trials_per_point);
  r.enumeration("sa_count_mode", s.sa_count_mode, kCountModes);
  return s;
}

PlannerConfig read_planner(const json& j, std::vector<std::string>& errors) {
  PlannerConfig p;
  Reader r(j, "planner", errors);
  r.string("name", p.name);
  r.numbers("targets", p.targets);
  r.enumerations("modes", p.modes, kModes);
  r.numbers("b_thz", p.b_thz);
  r.enumeration("policy", p.policy, kPolicies);
  r.number("confidence", p.confidence);
  r.count("trials", p.trials);
  r.count("n_max", p.n_max);
  return p;
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(b > a); }) == v.end();
}

void validate_axis(SweepVariable variable, const std::vector<double>& values, const std::string& path,
                   std::vector<std::string>& errors) {
  if (values.empty()) errors.push_back(path + ".values: must not be empty");
  if (!strictly_increasing(values)) errors.push_back(path + ".values: must be strictly increasing");
  if (variable == SweepVariable::TargetRate)
    errors.push_back(path + ".variable: TargetRate belongs in the planner section");
  for (double v : values) {
    const bool ok = variable == SweepVariable::NumBs ? (v >= 1.0 && std::floor(v) == v && v <= 1e6)
                    : variable == SweepVariable::AbsorptionK ? (v >= 0.0 && std::isfinite(v))
                                                             : (v > 0.0 && std::isfinite(v));
    if (!ok) {
      errors.push_back(path + ".values: " + std::string(to_string(variable)) + " value out of range");
      break;
    }
  }
}

void validate_sweep(const SweepConfig& s, const std::string& path, std::vector<std::string>& errors) {
  if (s.name.empty()) errors.push_back(path + ".name: must not be empty");
  validate_axis(s.variable, s.values, path, errors);
  if (s.series) {
    validate_axis(s.series->variable, s.series->values, path + ".series", errors);
    if (s.series->variable == s.variable) errors.push_back(path + ".series.variable: must differ from the sweep variable");
  }
  if (s.architectures.empty()) errors.push_back(path + ".architectures: must not be empty");
  if (s.policies.empty()) errors.push_back(path + ".policies: must not be empty");
  if (s.trials_per_point == 0) errors.push_back(path + ".trials_per_point: must be >= 1");

  const auto axis_has = [&](SweepVariable v) { return s.variable == v || (s.series && s.series->variable == v); };
  switch (s.kind) {
    case OutputKind::RateVsK:
      if (s.variable != SweepVariable::AbsorptionK) errors.push_back(path + ".kind: rate_vs_k needs variable AbsorptionK");
      if (!axis_has(SweepVariable::NumBs)) errors.push_back(path + ".kind: rate_vs_k needs a NumBs series");
      break;
    case OutputKind::AssocVsN:
    case OutputKind::SeRateVsN:
    case OutputKind::DceVsN:
      if (s.variable != SweepVariable::NumBs)
        errors.push_back(path + ".kind: " + std::string(to_string(s.kind)) + " needs variable NumBs");
      if (s.policies.size() != 1)
        errors.push_back(path + ".policies: " + std::string(to_string(s.kind)) + " takes exactly one policy");
      break;
    case OutputKind::Table: break;
  }
}

}  // namespace

void validate(const ExperimentConfig& c) {
  std::vector<std::string> errors;
  collect(errors, "", [&] { c.channel.validate(); });
  collect(errors, "", [&] { c.deployment.validate(); });
  collect(errors, "", [&] { c.costs.validate(); });
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.sweeps.size(); ++i) {
    const std::string path = "sweeps[" + std::to_string(i) + "]";
    validate_sweep(c.sweeps[i], path, errors);
    if (!names.insert(c.sweeps[i].name).second) errors.push_back(path + ".name: duplicate output name");
  }
  if (c.planner) {
    const auto& p = *c.planner;
    if (p.name.empty()) errors.emplace_back("planner.name: must not be empty");
    if (names.contains(p.name)) errors.emplace_back("planner.name: duplicate output name");
    if (p.targets.empty()) errors.emplace_back("planner.targets: must not be empty");
    if (!strictly_increasing(p.targets)) errors.emplace_back("planner.targets: must be strictly increasing");
    for (double t : p.targets)
      if (!(t >= 0.0) || !std::isfinite(t)) {
        errors.emplace_back("planner.targets: rates must be finite and >= 0");
        break;
      }
    if (p.modes.empty()) errors.emplace_back("planner.modes: must not be empty");
    if (p.b_thz.empty()) errors.emplace_back("planner.b_thz: must not be empty");
    for (double b : p.b_thz)
      if (!(b > 0.0) || !std::isfinite(b)) {
        errors.emplace_back("planner.b_thz: bandwidths must be positive");
        break;
      }
    if (!(p.confidence > 0.0 && p.confidence < 1.0)) errors.emplace_back("planner.confidence: must lie in (0, 1)");
    if (p.trials == 0) errors.emplace_back("planner.trials: must be >= 1");
    if (p.n_max == 0) errors.emplace_back("planner.n_max: must be >= 1");
  }
  if (c.sweeps.empty() && !c.planner) errors.emplace_back("sweeps: nothing to run (no sweeps and no planner)");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

ExperimentConfig parse_config_document(const json& doc, std::optional<std::string> preset_override) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  std::string preset = "custom";
  if (preset_override) {
    preset = *preset_override;
  } else if (doc.contains("preset")) {
    if (!doc.at("preset").is_string()) throw ConfigError("preset: must be a string");
    preset = doc.at("preset").get<std::string>();
  }

  json merged = preset_fragment(preset);
  merged.merge_patch(doc);
  merged["preset"] = preset;

  std::vector<std::string> errors;
  ExperimentConfig c;
  {
    Reader r(merged, "", errors);
    r.string("preset", c.preset);
    r.count("seed", c.seed);
    r.string("output_dir", c.output_dir);
    r.count("threads", c.threads);
    if (const json* v = r.take("channel")) c.channel = read_channel(*v, errors);
    if (const json* v = r.take("deployment")) c.deployment = read_deployment(*v, errors);
    if (const json* v = r.take("costs")) c.costs = read_costs(*v, errors);
    if (const json* v = r.take("sweeps")) {
      if (!v->is_array()) {
        r.error("sweeps", "must be an array");
      } else {
        for (std::size_t i = 0; i < v->size(); ++i)
          c.sweeps.push_back(read_sweep(v->at(i), "sweeps[" + std::to_string(i) + "]", errors));
      }
    }
    if (const json* v = r.take("planner")) c.planner = read_planner(*v, errors);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  validate(c);
  return c;
}

ExperimentConfig parse_config(std::string_view text, std::optional<std::string> preset_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config_document(doc, std::move(preset_override));
}

namespace {

template <class E>
json names_of(const std::vector<E>& v) {
  json out = json::array();
  for (E e : v) out.push_back(std::string(to_string(e)));
  return out;
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  const auto& p = c.channel;
  json j;
  j["preset"] = c.preset;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  j["channel"] = {{"f_rf", p.f_rf},
                  {"f_thz", p.f_thz},
                  {"b_rf", p.b_rf},
                  {"b_thz", p.b_thz},
                  {"p_tx_rf", p.p_tx_rf},
                  {"p_tx_thz", p.p_tx_thz},
                  {"g_thz_db", p.g_thz_db},
                  {"g_rf_db", p.g_rf_db},
                  {"k_abs", p.k_abs},
                  {"p_align", p.p_align},
                  {"noise_psd", p.noise_psd},
                  {"noise_figure_db", p.noise_figure_db},
                  {"pathloss_exp_rf", p.pathloss_exp_rf},
                  {"rf_fading", std::string(to_string(p.rf_fading))}};
  const auto& d = c.deployment;
  j["deployment"] = {{"architecture", std::string(to_string(d.architecture))},
                     {"n_rf", d.n_rf},
                     {"n_thz", d.n_thz},
                     {"n_hyb", d.n_hyb},
                     {"region_radius", d.region_radius}};
  const auto& k = c.costs;
  j["costs"] = {{"capex_rbs", k.capex_rbs}, {"capex_tbs", k.capex_tbs}, {"capex_hyb", k.capex_hyb},
                {"opex_rbs", k.opex_rbs},   {"opex_tbs", k.opex_tbs},   {"opex_hyb", k.opex_hyb},
                {"include_opex", k.include_opex}};
  j["sweeps"] = json::array();
  for (const auto& s : c.sweeps) {
    json js = {{"name", s.name},
               {"kind", std::string(to_string(s.kind))},
               {"variable", std::string(to_string(s.variable))},
               {"values", s.values},
               {"architectures", names_of(s.architectures)},
               {"policies", names_of(s.policies)},
               {"trials_per_point", s.trials_per_point},
               {"sa_count_mode", std::string(to_string(s.sa_count_mode))}};
    if (s.series)
      js["series"] = {{"variable", std::string(to_string(s.series->variable))}, {"values", s.series->values}};
    j["sweeps"].push_back(std::move(js));
  }
  if (c.planner) {
    const auto& pl = *c.planner;
    j["planner"] = {{"name", pl.name},
                    {"targets", pl.targets},
                    {"modes", names_of(pl.modes)},
                    {"b_thz", pl.b_thz},
                    {"policy", std::string(to_string(pl.policy))},
                    {"confidence", pl.confidence},
                    {"trials", pl.trials},
                    {"n_max", pl.n_max}};
  } else {
    j["planner"] = nullptr;
  }
  return j;
}

}  // namespace mbnsim
