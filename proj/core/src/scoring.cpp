#include "ideascore/scoring.hpp"

#include <cmath>
#include <tuple>

#include "ideascore/eaig.hpp"
#include "ideascore/error.hpp"
#include "ideascore/shaping.hpp"
#include "ideascore/text.hpp"

namespace ideascore {

std::pair<std::int64_t, LengthUnit> reasoning_length(std::string_view reasoning, const LanguageModel& policy,
                                                     LengthUnit requested) {
  if (requested == LengthUnit::Tokens) {
    if (auto n = policy.count_tokens(reasoning)) return {static_cast<std::int64_t>(*n), LengthUnit::Tokens};
  }
  return {static_cast<std::int64_t>(text::count_code_points(reasoning)), LengthUnit::Chars};
}

ScoreReport score_record(const RolloutRecord& record, const ScoringContext& ctx) {
  const auto& config = ctx.config;
  ScoreReport report;
  report.id = record.id;
  report.group_id = record.group_id;

  const auto verdict = shaping::format_valid(record.reasoning, config);
  report.valid = verdict.valid;
  report.invalid_reasons = verdict.reasons;
  std::tie(report.reasoning_length, report.length_unit) =
      reasoning_length(record.reasoning, ctx.policy, ctx.options.length_unit);

  report.delta_ig = eaig::evaluate(record, ctx.policy, ctx.reference, config.entropy_quantile).delta_ig;
  const auto sem =
      csg::contrastive_semantic_gain(record, ctx.embedder, ctx.options.section_mode, config.forbidden_header_patterns);
  report.s_gen = sem.s_gen;
  report.s_base = sem.s_base;
  report.delta_sem = sem.delta_sem;

  const auto terms = shaping::composite_reward(report.delta_ig, report.delta_sem, report.reasoning_length, verdict, config);
  report.shaped_ig = terms.shaped_ig;
  report.shaped_sem = terms.shaped_sem;
  report.alpha = terms.alpha;
  report.r_total = terms.r_total;
  return report;
}

std::vector<std::string_view> reference_corpus_texts(const RolloutRecord& record) {
  return {record.context, record.motivation, record.reasoning, record.ground_truth_method};
}

std::int64_t calibrate_anchor(std::span<const std::int64_t> lengths) {
  if (lengths.empty()) throw Error(ErrorCode::EmptyCorpus, "no reasoning lengths to calibrate from");
  long double sum = 0;
  for (auto n : lengths) sum += static_cast<long double>(n);
  const auto mean = static_cast<double>(sum / static_cast<long double>(lengths.size()));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(mean + 0.5)));
}

}  // namespace ideascore
