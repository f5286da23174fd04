#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "mbnsim/association.hpp"
#include "mbnsim/channel.hpp"
#include "mbnsim/geometry.hpp"
#include "mbnsim/metrics.hpp"
#include "mbnsim/rng.hpp"

namespace mbnsim {

/// Runs `trials` independent trials and returns, for each requested policy,
/// the per-trial records in trial order. All policies see the same
/// deployments and channel draws. Trial i uses substreams derived from
/// (seed, i), so results do not depend on `threads`.
std::vector<std::vector<TrialRecord>> run_trials(const DeploymentSpec& spec,
                                                 const ChannelParams& params,
                                                 std::span<const Policy> policies,
                                                 std::size_t trials, Seed seed,
                                                 unsigned threads = 1);

KpiAggregate run_point(const DeploymentSpec& spec, const ChannelParams& params, Policy policy,
                       std::size_t trials, Seed seed, const CostModel& costs = {},
                       unsigned threads = 1);

enum class SweepVariable { AbsorptionK, NumBs, ThzBandwidth, TargetRate };
/// How a NumBs value N maps onto an SA deployment.
enum class SaCountMode { PerBand, Total };

std::string_view to_string(SweepVariable variable);
std::string_view to_string(SaCountMode mode);

struct SweepPlan {
  SweepVariable variable = SweepVariable::AbsorptionK;
  std::vector<double> values;
  ChannelParams base_params;
  DeploymentSpec base_spec;
  std::vector<Policy> policies{Policy::MaxRate};
  std::size_t trials_per_point = 10000;
  Seed master_seed{1};
  SaCountMode sa_count_mode = SaCountMode::PerBand;
  unsigned threads = 1;

  void validate() const;
};

/// Applies one sweep coordinate to a (spec, params) pair. NumBs keeps the
/// architecture of `spec`.
void apply_sweep_value(SweepVariable variable, double value, SaCountMode mode,
                       DeploymentSpec& spec, ChannelParams& params);

struct SweepRow {
  double value = 0.0;
  Policy policy = Policy::MaxRate;
  Architecture architecture = Architecture::SA;
  DeploymentSpec spec;
  ChannelParams params;
  KpiAggregate kpi;
};

/// One row per (value, policy) in value-major order. Every point reuses the
/// plan's master seed, so rows share common random numbers. TargetRate plans
/// belong to the planner and are rejected here.
std::vector<SweepRow> run_sweep(const SweepPlan& plan, const CostModel& costs = {});

enum class PlannerMode { IntMBN, SaEqual, SaFlexible };
std::string_view to_string(PlannerMode mode);

struct PlannerSettings {
  ChannelParams params;
  Policy policy = Policy::MaxRate;
  double confidence = 0.95;
  std::size_t trials = 10000;
  std::size_t n_max = 60;
  Seed seed{1};
  double region_radius = 400.0;
  unsigned threads = 1;

  void validate() const;
};

struct PlannerEntry {
  double target_rate = 0.0;
  PlannerMode mode = PlannerMode::IntMBN;
  bool feasible = false;
  std::size_t n_rf = 0;
  std::size_t n_thz = 0;
  std::size_t n_hyb = 0;

  std::size_t total() const noexcept { return n_rf + n_thz + n_hyb; }
};

struct PlannerResult {
  double target_rate = 0.0;
  PlannerEntry n_required_int;
  PlannerEntry n_required_sa_equal;
  PlannerEntry n_required_sa_fn;
};

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Searches for the smallest deployment whose mean user rate clears a target
/// at a one-sided normal confidence level. Estimates are memoised per
/// deployment shape and always drawn from the same seed, so the search over
/// several targets is consistent and monotone.
///
/// Search spaces: IntMBN and SaEqual scan N = 1..n_max (SaEqual uses
/// N_R = N_T = N). SaFlexible scans totals 1..2 n_max in increasing order
/// and, within a total, n_thz from high to low; the first feasible split
/// wins. A target of exactly zero is met by the smallest deployment.
class Planner {
 public:
  explicit Planner(PlannerSettings settings);

  PlannerEntry required(double target_rate, PlannerMode mode);
  PlannerResult plan(double target_rate);
  RateEstimate estimate(const DeploymentSpec& spec);
  bool meets(const DeploymentSpec& spec, double target_rate);

  const PlannerSettings& settings() const noexcept { return settings_; }
  std::size_t evaluated_shapes() const noexcept { return cache_.size(); }

 private:
  PlannerSettings settings_;
  double z_;
  std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, RateEstimate> cache_;
};

PlannerEntry required_bs(double target_rate, PlannerMode mode, const PlannerSettings& settings);

}  // namespace mbnsim
