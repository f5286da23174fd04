#include "mbnsim/association.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mbnsim/error.hpp"

namespace mbnsim {

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::MaxRate: return "MaxRate";
    case Policy::MaxSinr: return "MaxSinr";
    case Policy::MaxRsrp: return "MaxRsrp";
    case Policy::Biased: return "Biased";
  }
  return "?";
}

double bias_score(const LinkBudget& link, const ChannelParams& params) {
  if (link.band == LinkBand::RF) return params.b_rf * link.rx_power;
  return params.b_thz * link.rx_power * std::exp(params.k_abs * link.distance);
}

double policy_score(Policy policy, const LinkBudget& link, const ChannelParams& params) {
  switch (policy) {
    case Policy::MaxRate: return link.rate;
    case Policy::MaxSinr: return link.sinr;
    case Policy::MaxRsrp: return link.rx_power;
    case Policy::Biased: return bias_score(link, params);
  }
  throw std::logic_error("policy_score: unknown policy");
}

AssociationOutcome associate(Policy policy, std::span<const LinkBudget> links,
                             const ChannelParams& params) {
  if (links.empty()) throw DomainError("associate: empty candidate list");
  std::size_t best = 0;
  double best_score = policy_score(policy, links[0], params);
  for (std::size_t i = 1; i < links.size(); ++i) {
    const double s = policy_score(policy, links[i], params);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return AssociationOutcome{best, links[best].band, best_score};
}

}  // namespace mbnsim
