#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ideascore/providers.hpp"

namespace ideascore {
struct RolloutRecord;
struct RewardConfig;
}

namespace ideascore::eaig {

/// Indicator over ground-truth positions selecting the highest-entropy ones.
struct EntropyMask {
  std::vector<bool> flags;
  std::size_t selected_count = 0;
};

struct GainSequence {
  std::vector<double> gains;
};

// k = max(1, ceil(quantile * T)).
std::size_t selected_count(std::size_t length, double quantile);

// Selects the k highest-entropy positions; ties go to the earlier position.
// Throws Error{EmptySequence}, Error{InvalidConfig} for quantile outside (0,1].
EntropyMask entropy_mask(const EntropySequence& entropies, double quantile);

// g_t = lp_with[t] - lp_base[t].
// Throws Error{LengthMismatch}, Error{TokenizationMismatch}.
GainSequence pointwise_gain(const LogProbSequence& lp_with, const LogProbSequence& lp_base);

// Mean gain over the selected positions.
// Throws Error{LengthMismatch}, Error{EmptyMask}.
double information_gain(const GainSequence& gains, const EntropyMask& mask);

struct Breakdown {
  EntropySequence entropies;
  EntropyMask mask;
  GainSequence gains;
  double delta_ig = 0.0;
};

// Entropy-aware information gain of the record's reasoning trace.
//
// `policy` scores y* after q and z; `reference` is the fixed model that
// scores y* after q alone and also supplies the entropies. Both must share a
// tokenizer.
Breakdown evaluate(const RolloutRecord& record, const LanguageModel& policy, const LanguageModel& reference,
                   double quantile);

// Conditioning strings handed to the providers.
std::string reference_conditioning(const RolloutRecord& record);
std::string policy_conditioning(const RolloutRecord& record);

}  // namespace ideascore::eaig
