#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbnsim/config.hpp"
#include "mbnsim/montecarlo.hpp"

namespace mbnsim {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

std::vector<std::string> csv_header(OutputKind kind);
std::vector<std::string> planner_csv_header();

struct SweepTableRow {
  std::optional<double> series_value;
  SweepRow row;
};

/// Executes one configured sweep. Rows are ordered by series value, then
/// architecture, then sweep value, then policy.
std::vector<SweepTableRow> run_sweep_config(const ExperimentConfig& config, const SweepConfig& sweep);
std::string render_csv(const SweepConfig& sweep, const std::vector<SweepTableRow>& rows);

struct PlannerRow {
  double b_thz = 0.0;
  PlannerEntry entry;
};

/// Rows ordered by THz bandwidth, then target, then mode.
std::vector<PlannerRow> run_planner_config(const ExperimentConfig& config);
std::string render_planner_csv(const std::vector<PlannerRow>& rows);

/// Deployment for `arch` derived from a base deployment of either
/// architecture (per_band: N_R = N_T = N_Hyb; total: N_R + N_T = N_Hyb).
DeploymentSpec spec_for(Architecture arch, const DeploymentSpec& base, SaCountMode mode);

struct RunReport {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path manifest;
};

/// Runs every sweep and the planner, writing one CSV each plus
/// manifest.json into config.output_dir.
RunReport run(const ExperimentConfig& config);

/// Re-checks a CSV emitted by `run`: known KPI columns must satisfy the
/// aggregate invariants. Returns the number of data rows; throws DomainError.
std::size_t validate_csv(std::string_view text);

}  // namespace mbnsim
