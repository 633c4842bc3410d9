#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ideascore/config.hpp"
#include "ideascore/csg.hpp"
#include "ideascore/providers.hpp"
#include "ideascore/record.hpp"
#include "ideascore/report.hpp"

namespace ideascore {

struct ScoringOptions {
  csg::SectionMode section_mode = csg::SectionMode::Overview;
  // Tokens falls back to characters when the policy has no local tokenizer;
  // the unit used is recorded in the report.
  LengthUnit length_unit = LengthUnit::Tokens;
};

/// Models a rollout is scored against. `policy` and `reference` may be the
/// same object; they must share a tokenizer.
struct ScoringContext {
  const LanguageModel& policy;
  const LanguageModel& reference;
  const Embedder& embedder;
  const RewardConfig& config;
  ScoringOptions options;
};

// Reasoning length in the requested unit, with the unit actually used.
std::pair<std::int64_t, LengthUnit> reasoning_length(std::string_view reasoning, const LanguageModel& policy,
                                                     LengthUnit requested);

// Full composite reward breakdown of one rollout. Throws ideascore::Error.
ScoreReport score_record(const RolloutRecord& record, const ScoringContext& ctx);

// Texts of a record the built-in reference model is fit on: context,
// motivation, reasoning and ground-truth method (never the generation).
std::vector<std::string_view> reference_corpus_texts(const RolloutRecord& record);

// Suggested anchor: the mean of `lengths`, rounded half up, at least 1.
// Throws Error{EmptyCorpus} for an empty span.
std::int64_t calibrate_anchor(std::span<const std::int64_t> lengths);

}  // namespace ideascore
