#include "ideascore/eaig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ideascore/error.hpp"
#include "ideascore/record.hpp"

namespace ideascore::eaig {

std::size_t selected_count(std::size_t length, double quantile) {
  const auto k = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(length)));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(length, 1));
}

EntropyMask entropy_mask(const EntropySequence& entropies, double quantile) {
  const std::size_t n = entropies.size();
  if (n == 0) throw Error(ErrorCode::EmptySequence, "entropy sequence is empty");
  if (!(quantile > 0.0 && quantile <= 1.0)) throw Error(ErrorCode::InvalidConfig, "quantile must lie in (0,1]");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entropies.entropies[a] > entropies.entropies[b];
  });

  EntropyMask mask;
  mask.selected_count = selected_count(n, quantile);
  mask.flags.assign(n, false);
  for (std::size_t i = 0; i < mask.selected_count; ++i) mask.flags[order[i]] = true;
  return mask;
}

GainSequence pointwise_gain(const LogProbSequence& lp_with, const LogProbSequence& lp_base) {
  if (lp_with.size() != lp_base.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(lp_with.size()) + " vs " + std::to_string(lp_base.size()));
  }
  if (lp_with.tokens != lp_base.tokens) {
    throw Error(ErrorCode::TokenizationMismatch, "policy and reference tokenised the target differently");
  }
  GainSequence g;
  g.gains.resize(lp_with.size());
  for (std::size_t t = 0; t < g.gains.size(); ++t) g.gains[t] = lp_with.logprobs[t] - lp_base.logprobs[t];
  return g;
}

double information_gain(const GainSequence& gains, const EntropyMask& mask) {
  if (gains.gains.size() != mask.flags.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(gains.gains.size()) + " gains vs " + std::to_string(mask.flags.size()) + " flags");
  }
  double sum = 0.0;
  std::size_t k = 0;
  for (std::size_t t = 0; t < mask.flags.size(); ++t) {
    if (mask.flags[t]) {
      sum += gains.gains[t];
      ++k;
    }
  }
  if (k == 0) throw Error(ErrorCode::EmptyMask, "mask selects no positions");
  return sum / static_cast<double>(k);
}

std::string reference_conditioning(const RolloutRecord& record) { return record.input() + "\n"; }

std::string policy_conditioning(const RolloutRecord& record) {
  return record.input() + "\n" + record.reasoning + "\n";
}

Breakdown evaluate(const RolloutRecord& record, const LanguageModel& policy, const LanguageModel& reference,
                   double quantile) {
  const std::string& target = record.ground_truth_method;
  const std::string base = reference_conditioning(record);
  Breakdown b;
  b.entropies = reference.token_entropy(base, target);
  b.mask = entropy_mask(b.entropies, quantile);
  const auto lp_base = reference.token_logprobs(base, target);
  const auto lp_with = policy.token_logprobs(policy_conditioning(record), target);
  if (lp_base.size() != b.entropies.size()) {
    throw Error(ErrorCode::LengthMismatch, "entropy and log-probability sequences differ in length");
  }
  b.gains = pointwise_gain(lp_with, lp_base);
  b.delta_ig = information_gain(b.gains, b.mask);
  return b;
}

}  // namespace ideascore::eaig
