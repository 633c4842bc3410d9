#include "ideascore/shaping.hpp"

#include <algorithm>
#include <cmath>

#include "ideascore/error.hpp"
#include "ideascore/text.hpp"

namespace ideascore::shaping {

StepShape ig_shape(const RewardConfig& config) { return {config.ig_thresholds, config.shaping_levels}; }
StepShape sem_shape(const RewardConfig& config) { return {config.sem_thresholds, config.shaping_levels}; }

double step_shape(double x, const StepShape& shape) {
  if (std::isnan(x)) throw Error(ErrorCode::NonfiniteInput, "step_shape of NaN");
  const auto& t = shape.thresholds;
  if (x < t[0]) return shape.levels[0];
  if (x < t[1]) return shape.levels[1];
  if (x < t[2]) return shape.levels[2];
  return shape.levels[3];
}

double length_anchor(std::int64_t length, std::int64_t anchor, double strength) {
  const double deficit = static_cast<double>(anchor - length) / static_cast<double>(anchor);
  return std::min(1.0, 1.0 - strength * deficit);
}

FormatVerdict format_valid(std::string_view reasoning, const RewardConfig& config) {
  FormatVerdict v;
  if (text::is_blank(reasoning)) {
    v.reasons.push_back(InvalidReason::Empty);
  } else {
    if (text::count_code_points(reasoning) < static_cast<std::size_t>(config.min_reasoning_chars)) {
      v.reasons.push_back(InvalidReason::TooShort);
    }
    for (auto line : text::stripped_lines(reasoning)) {
      if (text::starts_with_any(line, config.forbidden_header_patterns)) {
        v.reasons.push_back(InvalidReason::HeaderLeak);
        break;
      }
    }
  }
  v.valid = v.reasons.empty();
  return v;
}

RewardTerms composite_reward(double delta_ig, double delta_sem, std::int64_t reasoning_length,
                             const FormatVerdict& verdict, const RewardConfig& config) {
  if (!std::isfinite(delta_ig) || !std::isfinite(delta_sem)) {
    throw Error(ErrorCode::NonfiniteInput, "non-finite gain");
  }
  RewardTerms r;
  r.shaped_ig = step_shape(delta_ig, ig_shape(config));
  r.shaped_sem = step_shape(delta_sem, sem_shape(config));
  r.alpha = length_anchor(reasoning_length, config.require_anchor_length(), config.anchor_strength);
  r.r_total = verdict.valid ? r.alpha * (config.w_ig * r.shaped_ig + config.w_sem * r.shaped_sem) : 0.0;
  return r;
}

}  // namespace ideascore::shaping
