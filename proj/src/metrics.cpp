#include "mbnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbnsim/error.hpp"

namespace mbnsim {

void CostModel::validate() const {
  std::vector<std::string> errors;
  const auto nonneg = [&](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) errors.push_back(std::string(name) + ": must be >= 0 and finite");
  };
  nonneg(capex_rbs, "capex_rbs");
  nonneg(capex_tbs, "capex_tbs");
  nonneg(capex_hyb, "capex_hyb");
  nonneg(opex_rbs, "opex_rbs");
  nonneg(opex_tbs, "opex_tbs");
  nonneg(opex_hyb, "opex_hyb");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

void KpiAggregate::validate() const {
  const auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (trials < 1) throw DomainError("KpiAggregate: trials must be >= 1");
  if (!(thz_assoc_prob >= 0.0 && thz_assoc_prob <= 1.0))
    throw DomainError("KpiAggregate: thz_assoc_prob outside [0, 1]");
  if (!finite_nonneg(mean_se)) throw DomainError("KpiAggregate: mean_se not finite/nonnegative");
  if (!finite_nonneg(mean_rate)) throw DomainError("KpiAggregate: mean_rate not finite/nonnegative");
  if (!finite_nonneg(dce)) throw DomainError("KpiAggregate: dce not finite/nonnegative");
  for (double ci : {ci95_rate, ci95_se, ci95_assoc, ci95_dce})
    if (!finite_nonneg(ci)) throw DomainError("KpiAggregate: confidence half-width not finite/nonnegative");
}

double spectral_efficiency(double sinr) noexcept { return std::log2(1.0 + sinr); }

double spectral_efficiency(const AssociationOutcome& outcome, std::span<const LinkBudget> links) {
  if (outcome.serving_index >= links.size())
    throw DomainError("spectral_efficiency: serving index out of range");
  return spectral_efficiency(links[outcome.serving_index].sinr);
}

double dce_sa(std::size_t n_r, std::size_t n_t, double se, const CostModel& costs) {
  if (n_r + n_t == 0) throw ConfigError("dce_sa: needs at least one station");
  const double denom = static_cast<double>(n_r) * costs.cost_rbs() + static_cast<double>(n_t) * costs.cost_tbs();
  if (!(denom > 0.0)) throw ConfigError("costs: SA deployment cost is zero");
  return static_cast<double>(n_r + n_t) * se / denom;
}

double dce_int(std::size_t n_hyb, double se, const CostModel& costs) {
  if (n_hyb == 0) throw ConfigError("dce_int: needs at least one hybrid station");
  if (!(costs.cost_hyb() > 0.0)) throw ConfigError("costs: hybrid station cost is zero");
  // N_Hyb cancels; evaluating the reduced form keeps the result bit-identical across N.
  return 2.0 * se / costs.cost_hyb();
}

double dce(const DeploymentSpec& spec, double se, const CostModel& costs) {
  return spec.architecture == Architecture::SA ? dce_sa(spec.n_rf, spec.n_thz, se, costs)
                                               : dce_int(spec.n_hyb, se, costs);
}

double ci95_half_width(double sum, double sum_sq, std::size_t n) noexcept {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
  return 1.96 * std::sqrt(var / dn);
}

void KpiAccumulator::add(const TrialRecord& record) {
  ++n_;
  if (record.serving.band == LinkBand::THz) ++thz_;
  const double se = spectral_efficiency(record.serving.sinr);
  rate_sum_ += record.serving.rate;
  rate_sq_ += record.serving.rate * record.serving.rate;
  se_sum_ += se;
  se_sq_ += se * se;
}

void KpiAccumulator::merge(const KpiAccumulator& other) {
  n_ += other.n_;
  thz_ += other.thz_;
  rate_sum_ += other.rate_sum_;
  rate_sq_ += other.rate_sq_;
  se_sum_ += other.se_sum_;
  se_sq_ += other.se_sq_;
}

KpiAggregate KpiAccumulator::finish(const DeploymentSpec& spec, const CostModel& costs) const {
  if (n_ == 0) throw DomainError("aggregate: empty record stream");
  const double dn = static_cast<double>(n_);
  KpiAggregate k;
  k.trials = n_;
  k.thz_assoc_prob = static_cast<double>(thz_) / dn;
  k.mean_rate = rate_sum_ / dn;
  k.mean_se = se_sum_ / dn;
  k.ci95_rate = ci95_half_width(rate_sum_, rate_sq_, n_);
  k.ci95_se = ci95_half_width(se_sum_, se_sq_, n_);
  const double thz = static_cast<double>(thz_);
  k.ci95_assoc = ci95_half_width(thz, thz, n_);
  k.dce = dce(spec, k.mean_se, costs);
  // DCE is linear in SE, so its half-width scales by the same factor.
  k.ci95_dce = dce(spec, k.ci95_se, costs);
  return k;
}

KpiAggregate aggregate(std::span<const TrialRecord> records, const DeploymentSpec& spec,
                       const CostModel& costs) {
  KpiAccumulator acc;
  for (const auto& r : records) acc.add(r);
  return acc.finish(spec, costs);
}

}  // namespace mbnsim
