#pragma once

#include <cstddef>
#include <span>

#include "mbnsim/association.hpp"
#include "mbnsim/geometry.hpp"

namespace mbnsim {

struct CostModel {
  double capex_rbs = 33000.0;
  double capex_tbs = 38000.0;
  double capex_hyb = 48000.0;
  double opex_rbs = 2800.0;
  double opex_tbs = 2700.0;
  double opex_hyb = 3200.0;
  bool include_opex = true;

  double cost_rbs() const noexcept { return capex_rbs + (include_opex ? opex_rbs : 0.0); }
  double cost_tbs() const noexcept { return capex_tbs + (include_opex ? opex_tbs : 0.0); }
  double cost_hyb() const noexcept { return capex_hyb + (include_opex ? opex_hyb : 0.0); }

  void validate() const;
  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct TrialRecord {
  AssociationOutcome outcome;
  LinkBudget serving;
};

struct KpiAggregate {
  double thz_assoc_prob = 0.0;
  double mean_se = 0.0;    // bit/s/Hz
  double mean_rate = 0.0;  // bit/s
  double dce = 0.0;        // bit/s/Hz per dollar
  std::size_t trials = 0;
  // 95% normal-approximation half-widths
  double ci95_rate = 0.0;
  double ci95_se = 0.0;
  double ci95_assoc = 0.0;
  double ci95_dce = 0.0;

  double rf_assoc_prob() const noexcept { return 1.0 - thz_assoc_prob; }
  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

double spectral_efficiency(const AssociationOutcome& outcome, std::span<const LinkBudget> links);
double spectral_efficiency(double sinr) noexcept;

/// (N_R + N_T) SE / (N_R C_R + N_T C_T)
double dce_sa(std::size_t n_r, std::size_t n_t, double se, const CostModel& costs);
/// 2 N_Hyb SE / (N_Hyb C_H)
double dce_int(std::size_t n_hyb, double se, const CostModel& costs);
/// Dispatches on spec.architecture.
double dce(const DeploymentSpec& spec, double se, const CostModel& costs);

/// Running sums over trial records. Accumulation is order-free, so partial
/// accumulators from parallel workers can be merged.
class KpiAccumulator {
 public:
  void add(const TrialRecord& record);
  void merge(const KpiAccumulator& other);
  std::size_t count() const noexcept { return n_; }
  KpiAggregate finish(const DeploymentSpec& spec, const CostModel& costs) const;

 private:
  std::size_t n_ = 0;
  std::size_t thz_ = 0;
  double rate_sum_ = 0.0;
  double rate_sq_ = 0.0;
  double se_sum_ = 0.0;
  double se_sq_ = 0.0;
};

/// Throws DomainError on an empty stream.
KpiAggregate aggregate(std::span<const TrialRecord> records, const DeploymentSpec& spec,
                       const CostModel& costs);

/// 1.96 * sample standard deviation / sqrt(n); zero for n < 2.
double ci95_half_width(double sum, double sum_sq, std::size_t n) noexcept;

}  // namespace mbnsim
