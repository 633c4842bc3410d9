#include "ideascore/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ideascore/error.hpp"

namespace ideascore::grpo {

AdvantageSet group_advantages(std::span<const double> rewards) {
  const std::size_t g = rewards.size();
  if (g < 2) throw Error(ErrorCode::GroupTooSmall, "group has " + std::to_string(g) + " reward(s), need >= 2");
  for (double r : rewards) {
    if (!std::isfinite(r)) throw Error(ErrorCode::NonfiniteInput, "non-finite reward");
  }
  AdvantageSet out;
  out.mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(g);
  double sq = 0.0;
  for (double r : rewards) sq += (r - out.mean) * (r - out.mean);
  out.std = std::sqrt(sq / static_cast<double>(g));
  out.advantages.assign(g, 0.0);
  if (out.std >= kDegenerateStd) {
    for (std::size_t i = 0; i < g; ++i) out.advantages[i] = (rewards[i] - out.mean) / out.std;
  }
  return out;
}

RatioSequence importance_ratios(const LogProbSequence& lp_new, const LogProbSequence& lp_old) {
  if (lp_new.size() != lp_old.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(lp_new.size()) + " vs " + std::to_string(lp_old.size()));
  }
  if (lp_new.tokens != lp_old.tokens) throw Error(ErrorCode::TokenizationMismatch, "token texts differ");
  RatioSequence out;
  out.ratios.resize(lp_new.size());
  for (std::size_t t = 0; t < out.ratios.size(); ++t) {
    out.ratios[t] = std::exp(lp_new.logprobs[t] - lp_old.logprobs[t]);
    if (!std::isfinite(out.ratios[t]) || out.ratios[t] <= 0.0) {
      throw Error(ErrorCode::NonfiniteInput, "ratio is not positive and finite at token " + std::to_string(t));
    }
  }
  return out;
}

double clipped_term(double ratio, double advantage, double clip_low, double clip_high) {
  const double clipped = std::clamp(ratio, 1.0 - clip_low, 1.0 + clip_high);
  return std::min(ratio * advantage, clipped * advantage);
}

double clipped_objective(std::span<const RolloutGroup> groups, double clip_low, double clip_high,
                         TokenAggregation aggregation) {
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return groups[a].group_id < groups[b].group_id; });

  double batch_sum = 0.0;
  std::size_t batch_tokens = 0;
  double group_means = 0.0;
  std::size_t nonempty_groups = 0;
  for (std::size_t gi : order) {
    const auto& group = groups[gi];
    if (group.rollouts.size() != group.advantages.advantages.size()) {
      throw Error(ErrorCode::LengthMismatch, "group '" + group.group_id + "' has " +
                                                 std::to_string(group.rollouts.size()) + " rollouts but " +
                                                 std::to_string(group.advantages.advantages.size()) + " advantages");
    }
    double sum = 0.0;
    std::size_t tokens = 0;
    for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
      const double a = group.advantages.advantages[i];
      for (double r : group.rollouts[i].ratios) {
        if (!std::isfinite(r)) throw Error(ErrorCode::NonfiniteInput, "non-finite ratio");
        sum += clipped_term(r, a, clip_low, clip_high);
      }
      tokens += group.rollouts[i].ratios.size();
    }
    batch_sum += sum;
    batch_tokens += tokens;
    if (tokens > 0) {
      group_means += sum / static_cast<double>(tokens);
      ++nonempty_groups;
    }
  }
  if (batch_tokens == 0) throw Error(ErrorCode::EmptyBatch, "batch contains no tokens");
  if (aggregation == TokenAggregation::GroupTokenMean) return group_means / static_cast<double>(nonempty_groups);
  return batch_sum / static_cast<double>(batch_tokens);
}

}  // namespace ideascore::grpo
