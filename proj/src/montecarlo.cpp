#include "mbnsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "mbnsim/error.hpp"

namespace mbnsim {

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::AbsorptionK: return "AbsorptionK";
    case SweepVariable::NumBs: return "NumBs";
    case SweepVariable::ThzBandwidth: return "ThzBandwidth";
    case SweepVariable::TargetRate: return "TargetRate";
  }
  return "?";
}

std::string_view to_string(SaCountMode mode) { return mode == SaCountMode::PerBand ? "per_band" : "total"; }

std::string_view to_string(PlannerMode mode) {
  switch (mode) {
    case PlannerMode::IntMBN: return "IntMBN";
    case PlannerMode::SaEqual: return "SaEqual";
    case PlannerMode::SaFlexible: return "SaFlexible";
  }
  return "?";
}

std::vector<std::vector<TrialRecord>> run_trials(const DeploymentSpec& spec,
                                                 const ChannelParams& params,
                                                 std::span<const Policy> policies,
                                                 std::size_t trials, Seed seed, unsigned threads) {
  spec.validate();
  params.validate();
  if (trials == 0) throw ConfigError("trials: must be >= 1");
  if (policies.empty()) throw ConfigError("policies: at least one policy required");

  std::vector<std::vector<TrialRecord>> out(policies.size(), std::vector<TrialRecord>(trials));

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Deployment dep = sample_deployment(spec, derive_seed(seed, t, Stream::Geometry));
      const auto links = evaluate_links(dep, params, derive_seed(seed, t, Stream::Channel));
      for (std::size_t p = 0; p < policies.size(); ++p) {
        const auto outcome = associate(policies[p], links, params);
        out[p][t] = TrialRecord{outcome, links[outcome.serving_index]};
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, trials);
  if (workers == 1) {
    work(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(trials, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  return out;
}

KpiAggregate run_point(const DeploymentSpec& spec, const ChannelParams& params, Policy policy,
                       std::size_t trials, Seed seed, const CostModel& costs, unsigned threads) {
  const Policy one[] = {policy};
  const auto records = run_trials(spec, params, one, trials, seed, threads);
  return aggregate(records.front(), spec, costs);
}

void SweepPlan::validate() const {
  std::vector<std::string> errors;
  if (values.empty()) errors.emplace_back("values: sweep needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) {
      errors.emplace_back("values: must be strictly increasing");
      break;
    }
  if (policies.empty()) errors.emplace_back("policies: at least one policy required");
  if (trials_per_point == 0) errors.emplace_back("trials_per_point: must be >= 1");
  if (variable == SweepVariable::NumBs)
    for (double v : values)
      if (!(v >= 1.0) || v != std::floor(v)) {
        errors.emplace_back("values: NumBs values must be positive integers");
        break;
      }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  base_params.validate();
  base_spec.validate();
}

void apply_sweep_value(SweepVariable variable, double value, SaCountMode mode,
                       DeploymentSpec& spec, ChannelParams& params) {
  switch (variable) {
    case SweepVariable::AbsorptionK: params.k_abs = value; break;
    case SweepVariable::ThzBandwidth: params.b_thz = value; break;
    case SweepVariable::NumBs: {
      const auto n = static_cast<std::size_t>(value);
      if (spec.architecture == Architecture::Int) {
        spec.n_hyb = n;
      } else if (mode == SaCountMode::PerBand) {
        spec.n_rf = n;
        spec.n_thz = n;
      } else {
        spec.n_rf = n / 2;
        spec.n_thz = n - n / 2;
      }
      break;
    }
    case SweepVariable::TargetRate:
      throw ConfigError("variable: TargetRate sweeps are run by the planner");
  }
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan, const CostModel& costs) {
  plan.validate();
  costs.validate();
  if (plan.variable == SweepVariable::TargetRate)
    throw ConfigError("variable: TargetRate sweeps are run by the planner");

  std::vector<SweepRow> rows;
  rows.reserve(plan.values.size() * plan.policies.size());
  for (double value : plan.values) {
    DeploymentSpec spec = plan.base_spec;
    ChannelParams params = plan.base_params;
    apply_sweep_value(plan.variable, value, plan.sa_count_mode, spec, params);
    spec.validate();
    params.validate();
    const auto records =
        run_trials(spec, params, plan.policies, plan.trials_per_point, plan.master_seed, plan.threads);
    for (std::size_t p = 0; p < plan.policies.size(); ++p)
      rows.push_back(SweepRow{value, plan.policies[p], spec.architecture, spec, params,
                              aggregate(records[p], spec, costs)});
  }
  return rows;
}

void PlannerSettings::validate() const {
  std::vector<std::string> errors;
  if (!(confidence > 0.0 && confidence < 1.0)) errors.emplace_back("confidence: must lie in (0, 1)");
  if (trials == 0) errors.emplace_back("trials: must be >= 1");
  if (n_max == 0) errors.emplace_back("n_max: must be >= 1");
  if (!(region_radius > 0.0)) errors.emplace_back("region_radius: must be positive");
  if (!errors.empty()) throw ConfigError(std::move(errors));
  params.validate();
}

Planner::Planner(PlannerSettings settings) : settings_(std::move(settings)) {
  settings_.validate();
  z_ = boost::math::quantile(boost::math::normal(), settings_.confidence);
}

RateEstimate Planner::estimate(const DeploymentSpec& spec) {
  const auto key = std::make_tuple(static_cast<int>(spec.architecture), spec.n_rf, spec.n_thz, spec.n_hyb);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Policy one[] = {settings_.policy};
  const auto records = run_trials(spec, settings_.params, one, settings_.trials, settings_.seed, settings_.threads);
  double sum = 0.0, sq = 0.0;
  for (const auto& r : records.front()) {
    sum += r.serving.rate;
    sq += r.serving.rate * r.serving.rate;
  }
  const double n = static_cast<double>(settings_.trials);
  const double mean = sum / n;
  const double var = settings_.trials > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1.0)) : 0.0;
  const RateEstimate est{mean, std::sqrt(var / n)};
  cache_.emplace(key, est);
  return est;
}

bool Planner::meets(const DeploymentSpec& spec, double target_rate) {
  const auto est = estimate(spec);
  return est.mean - z_ * est.std_error >= target_rate;
}

PlannerEntry Planner::required(double target_rate, PlannerMode mode) {
  if (!(target_rate >= 0.0) || !std::isfinite(target_rate))
    throw ConfigError("target_rate: must be a finite nonnegative rate in bit/s");
  const double radius = settings_.region_radius;
  const std::size_t n_max = settings_.n_max;
  PlannerEntry entry{target_rate, mode, false, 0, 0, 0};
  const bool vacuous = target_rate == 0.0;

  switch (mode) {
    case PlannerMode::IntMBN:
      for (std::size_t n = 1; n <= n_max; ++n)
        if (vacuous || meets(DeploymentSpec::integrated(n, radius), target_rate)) {
          entry.feasible = true;
          entry.n_hyb = n;
          return entry;
        }
      return entry;
    case PlannerMode::SaEqual:
      for (std::size_t n = 1; n <= n_max; ++n)
        if (vacuous || meets(DeploymentSpec::stand_alone(n, n, radius), target_rate)) {
          entry.feasible = true;
          entry.n_rf = entry.n_thz = n;
          return entry;
        }
      return entry;
    case PlannerMode::SaFlexible:
      for (std::size_t total = 1; total <= 2 * n_max; ++total)
        for (std::size_t n_thz = total + 1; n_thz-- > 0;) {
          const std::size_t n_rf = total - n_thz;
          if (vacuous || meets(DeploymentSpec::stand_alone(n_rf, n_thz, radius), target_rate)) {
            entry.feasible = true;
            entry.n_rf = n_rf;
            entry.n_thz = n_thz;
            return entry;
          }
        }
      return entry;
  }
  return entry;
}

PlannerResult Planner::plan(double target_rate) {
  return PlannerResult{target_rate, required(target_rate, PlannerMode::IntMBN),
                       required(target_rate, PlannerMode::SaEqual),
                       required(target_rate, PlannerMode::SaFlexible)};
}

PlannerEntry required_bs(double target_rate, PlannerMode mode, const PlannerSettings& settings) {
  Planner planner(settings);
  return planner.required(target_rate, mode);
}

}  // namespace mbnsim
