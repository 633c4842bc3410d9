#pragma once

#include <span>
#include <string>
#include <vector>

#include "ideascore/providers.hpp"

namespace ideascore::grpo {

// Groups whose population standard deviation is below this get zero advantages.
inline constexpr double kDegenerateStd = 1e-8;

struct AdvantageSet {
  std::vector<double> advantages;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

// A_i = (R_i - mean) / std with population std.
// Throws Error{GroupTooSmall} for fewer than two rewards, Error{NonfiniteInput}.
AdvantageSet group_advantages(std::span<const double> rewards);

struct RatioSequence {
  std::vector<double> ratios;
};

// r_t = exp(lp_new[t] - lp_old[t]).
// Throws Error{LengthMismatch}, Error{TokenizationMismatch}, Error{NonfiniteInput}.
RatioSequence importance_ratios(const LogProbSequence& lp_new, const LogProbSequence& lp_old);

struct RolloutGroup {
  std::string group_id;
  std::vector<RatioSequence> rollouts;  // one per rollout, aligned with advantages
  AdvantageSet advantages;
};

enum class TokenAggregation {
  BatchTokenMean,  // divide by the total token count of the batch
  GroupTokenMean,  // token-mean inside each group, then mean over groups
};

// min(r * A, clip(r, 1 - clip_low, 1 + clip_high) * A) for one token.
double clipped_term(double ratio, double advantage, double clip_low, double clip_high);

// Token-level clipped surrogate objective. Groups are reduced in group_id
// order so the result does not depend on the order they are passed in.
// Throws Error{EmptyBatch}, Error{LengthMismatch}, Error{NonfiniteInput}.
double clipped_objective(std::span<const RolloutGroup> groups, double clip_low, double clip_high,
                         TokenAggregation aggregation = TokenAggregation::BatchTokenMean);

}  // namespace ideascore::grpo
