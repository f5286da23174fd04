#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "mbnsim/channel.hpp"

namespace mbnsim {

enum class Policy { MaxRate, MaxSinr, MaxRsrp, Biased };

std::string_view to_string(Policy policy);

struct AssociationOutcome {
  std::size_t serving_index = 0;  // into the candidate list
  LinkBand serving_band = LinkBand::RF;
  double score = 0.0;
};

/// Absorption-aware bias: B_R p_R for RF; B_T p_T exp(K d) for THz.
double bias_score(const LinkBudget& link, const ChannelParams& params);

double policy_score(Policy policy, const LinkBudget& link, const ChannelParams& params);

/// Argmax of policy_score over the candidates, lowest index on ties.
/// Throws DomainError for an empty list.
AssociationOutcome associate(Policy policy, std::span<const LinkBudget> links,
                             const ChannelParams& params);

}  // namespace mbnsim
