#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mbnsim/channel.hpp"
#include "mbnsim/geometry.hpp"
#include "mbnsim/metrics.hpp"
#include "mbnsim/montecarlo.hpp"

namespace mbnsim {

/// CSV layout written for a sweep. The figure kinds fix their columns so the
/// plotting scripts can rely on them; `table` carries every KPI.
enum class OutputKind { RateVsK, AssocVsN, SeRateVsN, DceVsN, Table };

std::string_view to_string(OutputKind kind);

struct SeriesAxis {
  SweepVariable variable = SweepVariable::NumBs;
  std::vector<double> values;
  friend bool operator==(const SeriesAxis&, const SeriesAxis&) = default;
};

/// One CSV: a sweep over `values` of `variable`, optionally repeated for
/// every value of a second `series` axis, for each architecture and policy.
struct SweepConfig {
  std::string name;
  OutputKind kind = OutputKind::Table;
  SweepVariable variable = SweepVariable::AbsorptionK;
  std::vector<double> values;
  std::optional<SeriesAxis> series;
  std::vector<Architecture> architectures{Architecture::SA, Architecture::Int};
  std::vector<Policy> policies{Policy::MaxRate};
  std::size_t trials_per_point = 10000;
  SaCountMode sa_count_mode = SaCountMode::PerBand;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Required-BS search over target rates, repeated per THz bandwidth.
struct PlannerConfig {
  std::string name = "reqbs_vs_target";
  std::vector<double> targets;
  std::vector<PlannerMode> modes{PlannerMode::IntMBN, PlannerMode::SaEqual, PlannerMode::SaFlexible};
  std::vector<double> b_thz;
  Policy policy = Policy::MaxRate;
  double confidence = 0.95;
  std::size_t trials = 10000;
  std::size_t n_max = 60;
  friend bool operator==(const PlannerConfig&, const PlannerConfig&) = default;
};

struct ExperimentConfig {
  std::string preset = "custom";
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  unsigned threads = 1;
  ChannelParams channel;
  DeploymentSpec deployment = DeploymentSpec::stand_alone(30, 30);
  CostModel costs;
  std::vector<SweepConfig> sweeps;
  std::optional<PlannerConfig> planner;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Built-in preset names: fig2, fig3, fig4a, fig4b, fig4c, custom.
std::vector<std::string> preset_names();
/// JSON fragment for a preset; throws ConfigError for an unknown name.
nlohmann::json preset_fragment(std::string_view name);

/// Parses a JSON document. The preset named by `preset_override` (or by the
/// document's "preset" key) is applied first and the document's keys are
/// merged over it. Unknown keys and invariant violations are collected and
/// reported together in one ConfigError.
ExperimentConfig parse_config(std::string_view text, std::optional<std::string> preset_override = {});
ExperimentConfig parse_config_document(const nlohmann::json& doc, std::optional<std::string> preset_override = {});

/// Explicit JSON for a config; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& config);

/// Checks cross-field constraints (kinds versus axes, non-empty work).
void validate(const ExperimentConfig& config);

}  // namespace mbnsim
