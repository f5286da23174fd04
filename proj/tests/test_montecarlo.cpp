#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "mbnsim/error.hpp"
#include "mbnsim/montecarlo.hpp"

using namespace mbnsim;

namespace {

bool same(const KpiAggregate& a, const KpiAggregate& b) {
  return a.thz_assoc_prob == b.thz_assoc_prob && a.mean_se == b.mean_se && a.mean_rate == b.mean_rate &&
         a.dce == b.dce && a.trials == b.trials && a.ci95_rate == b.ci95_rate && a.ci95_se == b.ci95_se &&
         a.ci95_assoc == b.ci95_assoc && a.ci95_dce == b.ci95_dce;
}

// Replays one trial from the documented substream scheme.
TrialRecord replay(const DeploymentSpec& spec, const ChannelParams& p, Policy pol, Seed master, std::uint64_t t) {
  const auto dep = sample_deployment(spec, derive_seed(master, t, Stream::Geometry));
  const auto links = evaluate_links(dep, p, derive_seed(master, t, Stream::Channel));
  const auto out = associate(pol, links, p);
  return {out, links[out.serving_index]};
}

}  // namespace

TEST_CASE("run_point is deterministic and independent of the thread count") {
  const auto spec = DeploymentSpec::stand_alone(6, 6);
  const ChannelParams p;
  const auto a = run_point(spec, p, Policy::MaxRate, 2000, Seed{42});
  const auto b = run_point(spec, p, Policy::MaxRate, 2000, Seed{42});
  const auto c = run_point(spec, p, Policy::MaxRate, 2000, Seed{42}, CostModel{}, 4);
  CHECK(same(a, b));
  CHECK(same(a, c));
  const auto d = run_point(spec, p, Policy::MaxRate, 2000, Seed{43});
  CHECK(a.mean_rate != d.mean_rate);
}

TEST_CASE("run_trials matches trial-by-trial replay") {
  const auto spec = DeploymentSpec::integrated(5);
  ChannelParams p;
  p.p_align = 0.3;
  const Policy pols[] = {Policy::MaxRate, Policy::Biased, Policy::MaxSinr};
  const auto recs = run_trials(spec, p, pols, 300, Seed{8}, 3);
  REQUIRE(recs.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    REQUIRE(recs[k].size() == 300);
    for (std::uint64_t t = 0; t < 300; ++t) {
      const auto want = replay(spec, p, pols[k], Seed{8}, t);
      CHECK(recs[k][t].outcome.serving_index == want.outcome.serving_index);
      CHECK(recs[k][t].serving.rate == want.serving.rate);
    }
  }
}

TEST_CASE("a lone RF station is never a THz association") {
  const auto k = run_point(DeploymentSpec::stand_alone(1, 0), ChannelParams{}, Policy::MaxRate, 1, Seed{1});
  CHECK(k.thz_assoc_prob == 0.0);
  CHECK(k.trials == 1);
  const auto many = run_point(DeploymentSpec::stand_alone(1, 0), ChannelParams{}, Policy::Biased, 500, Seed{1});
  CHECK(many.thz_assoc_prob == 0.0);
  CHECK(many.mean_rate > 0.0);
}

TEST_CASE("dense hybrid deployments mostly serve on THz") {
  ChannelParams p;
  p.b_thz = 10e9;
  const auto k = run_point(DeploymentSpec::integrated(30), p, Policy::MaxRate, 10000, Seed{1});
  CHECK(k.thz_assoc_prob > 0.9);
  CHECK_NOTHROW(k.validate());
}

TEST_CASE("run_trials rejects bad inputs") {
  const Policy pol[] = {Policy::MaxRate};
  CHECK_THROWS_AS(run_trials(DeploymentSpec::stand_alone(0, 0), ChannelParams{}, pol, 10, Seed{1}), ConfigError);
  CHECK_THROWS_AS(run_trials(DeploymentSpec::integrated(3), ChannelParams{}, pol, 0, Seed{1}), ConfigError);
  CHECK_THROWS_AS(run_trials(DeploymentSpec::integrated(3), ChannelParams{}, std::span<const Policy>{}, 10, Seed{1}),
                  ConfigError);
}

TEST_CASE("sweep shape and degenerate sweep") {
  SweepPlan plan;
  plan.variable = SweepVariable::AbsorptionK;
  plan.values = {0.0};
  plan.base_spec = DeploymentSpec::integrated(10);
  plan.trials_per_point = 500;
  plan.master_seed = Seed{5};
  const auto rows = run_sweep(plan);
  REQUIRE(rows.size() == 1);
  ChannelParams p;
  p.k_abs = 0.0;
  CHECK(same(rows[0].kpi, run_point(plan.base_spec, p, Policy::MaxRate, 500, Seed{5})));

  plan.values = {0.001, 0.01, 0.1};
  plan.policies = {Policy::MaxRate, Policy::MaxRsrp};
  const auto grid = run_sweep(plan);
  REQUIRE(grid.size() == 6);
  CHECK(grid[0].value == 0.001);
  CHECK(grid[1].value == 0.001);
  CHECK(grid[1].policy == Policy::MaxRsrp);
  CHECK(grid[5].params.k_abs == 0.1);
}

TEST_CASE("sweep plan validation") {
  SweepPlan plan;
  plan.base_spec = DeploymentSpec::integrated(2);
  plan.values = {};
  CHECK_THROWS_AS(run_sweep(plan), ConfigError);
  plan.values = {0.1, 0.01};
  CHECK_THROWS_AS(run_sweep(plan), ConfigError);
  plan.values = {0.1};
  plan.trials_per_point = 0;
  CHECK_THROWS_AS(run_sweep(plan), ConfigError);
  plan.trials_per_point = 10;
  plan.variable = SweepVariable::NumBs;
  plan.values = {2.5};
  CHECK_THROWS_AS(run_sweep(plan), ConfigError);
  plan.variable = SweepVariable::TargetRate;
  plan.values = {1e9};
  CHECK_THROWS_AS(run_sweep(plan), ConfigError);
}

TEST_CASE("NumBs maps onto both architectures") {
  DeploymentSpec sa = DeploymentSpec::stand_alone(1, 1);
  DeploymentSpec in = DeploymentSpec::integrated(1);
  ChannelParams p;
  apply_sweep_value(SweepVariable::NumBs, 7, SaCountMode::PerBand, sa, p);
  CHECK(sa.n_rf == 7);
  CHECK(sa.n_thz == 7);
  apply_sweep_value(SweepVariable::NumBs, 7, SaCountMode::Total, sa, p);
  CHECK(sa.n_rf == 3);
  CHECK(sa.n_thz == 4);
  apply_sweep_value(SweepVariable::NumBs, 7, SaCountMode::PerBand, in, p);
  CHECK(in.n_hyb == 7);
  apply_sweep_value(SweepVariable::ThzBandwidth, 5e9, SaCountMode::PerBand, in, p);
  CHECK(p.b_thz == 5e9);
}

TEST_CASE("more stations raise the max-rate mean, more absorption lowers it") {
  SweepPlan plan;
  plan.variable = SweepVariable::NumBs;
  plan.values = {10, 60};
  plan.base_spec = DeploymentSpec::stand_alone(1, 1);
  plan.trials_per_point = 10000;
  const auto n_rows = run_sweep(plan);
  CHECK(n_rows[1].kpi.mean_rate >= n_rows[0].kpi.mean_rate);

  plan.variable = SweepVariable::AbsorptionK;
  plan.values = {0.001, 0.0033, 0.01, 0.05, 0.1};
  plan.base_spec = DeploymentSpec::integrated(30);
  const auto k_rows = run_sweep(plan);
  for (std::size_t i = 1; i < k_rows.size(); ++i) {
    const double slack = k_rows[i].kpi.ci95_rate + k_rows[i - 1].kpi.ci95_rate;
    CHECK(k_rows[i].kpi.mean_rate <= k_rows[i - 1].kpi.mean_rate + slack);
  }
  CHECK(k_rows.back().kpi.mean_rate < k_rows.front().kpi.mean_rate);
}

TEST_CASE("planner on a vacuous target and invalid settings") {
  PlannerSettings s;
  s.trials = 50;
  s.n_max = 5;
  Planner planner(s);
  for (auto mode : {PlannerMode::IntMBN, PlannerMode::SaEqual, PlannerMode::SaFlexible}) {
    const auto e = planner.required(0.0, mode);
    CHECK(e.feasible);
    CHECK(e.total() == (mode == PlannerMode::SaEqual ? 2u : 1u));
  }
  CHECK_THROWS_AS(planner.required(-1.0, PlannerMode::IntMBN), ConfigError);
  s.confidence = 1.0;
  CHECK_THROWS_AS(Planner{s}, ConfigError);
  s.confidence = 0.95;
  s.n_max = 0;
  CHECK_THROWS_AS(Planner{s}, ConfigError);
}

TEST_CASE("planner reports an unreachable target as infeasible") {
  PlannerSettings s;
  s.trials = 100;
  s.n_max = 3;
  const auto e = required_bs(1e15, PlannerMode::SaFlexible, s);
  CHECK_FALSE(e.feasible);
  CHECK(e.total() == 0);
}

TEST_CASE("flexible planner matches exhaustive enumeration") {
  PlannerSettings s;
  s.trials = 200;
  s.n_max = 4;
  s.seed = Seed{17};
  s.params.k_abs = 0.05;
  const double z = boost::math::quantile(boost::math::normal(), s.confidence);

  // Independent lower confidence bound for every split up to the search bound.
  std::vector<std::tuple<std::size_t, std::size_t, double>> shapes;  // (n_rf, n_thz, lower bound)
  const Policy pol[] = {s.policy};
  for (std::size_t total = 1; total <= 2 * s.n_max; ++total)
    for (std::size_t n_thz = 0; n_thz <= total; ++n_thz) {
      const auto recs = run_trials(DeploymentSpec::stand_alone(total - n_thz, n_thz), s.params, pol, s.trials, s.seed);
      double sum = 0, sq = 0;
      for (const auto& r : recs[0]) {
        sum += r.serving.rate;
        sq += r.serving.rate * r.serving.rate;
      }
      const double n = double(s.trials), mean = sum / n;
      const double se = std::sqrt((sq - n * mean * mean) / (n - 1) / n);
      shapes.emplace_back(total - n_thz, n_thz, mean - z * se);
    }

  std::vector<double> targets{1e6};
  for (const auto& [a, b, lb] : shapes) targets.push_back(std::max(1.0, lb * 0.999));
  targets.push_back(1e14);

  Planner planner(s);
  for (double target : targets) {
    bool found = false;
    std::size_t best_rf = 0, best_thz = 0;
    for (const auto& [rf, thz, lb] : shapes) {
      if (lb < target) continue;
      const std::size_t tot = rf + thz;
      if (!found || tot < best_rf + best_thz || (tot == best_rf + best_thz && thz > best_thz)) {
        found = true;
        best_rf = rf;
        best_thz = thz;
      }
    }
    const auto got = planner.required(target, PlannerMode::SaFlexible);
    CHECK(got.feasible == found);
    if (found) {
      CHECK(got.n_rf == best_rf);
      CHECK(got.n_thz == best_thz);
    }
  }
  CHECK(planner.evaluated_shapes() <= shapes.size());
}

TEST_CASE("planner requirements grow with the target and flexible beats equal") {
  PlannerSettings s;
  s.trials = 300;
  s.n_max = 12;
  s.params.p_tx_rf = 3.0;
  s.params.k_abs = 0.05;
  Planner planner(s);
  PlannerResult prev{};
  bool first = true;
  for (double target : {0.0, 1e8, 5e8, 1e9, 2e9, 5e9, 1e10, 2e10}) {
    const auto r = planner.plan(target);
    for (const auto* e : {&r.n_required_int, &r.n_required_sa_equal, &r.n_required_sa_fn})
      if (e->feasible) CHECK(e->total() >= 1);
    if (r.n_required_sa_equal.feasible) {
      REQUIRE(r.n_required_sa_fn.feasible);
      CHECK(r.n_required_sa_fn.total() <= r.n_required_sa_equal.total());
    }
    if (!first) {
      const std::pair<const PlannerEntry*, const PlannerEntry*> pairs[] = {
          {&prev.n_required_int, &r.n_required_int},
          {&prev.n_required_sa_equal, &r.n_required_sa_equal},
          {&prev.n_required_sa_fn, &r.n_required_sa_fn}};
      for (auto [a, b] : pairs) {
        if (!a->feasible) CHECK_FALSE(b->feasible);
        if (a->feasible && b->feasible) CHECK(b->total() >= a->total());
      }
    }
    prev = r;
    first = false;
  }
}
