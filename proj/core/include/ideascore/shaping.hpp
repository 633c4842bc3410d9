#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ideascore/config.hpp"
#include "ideascore/report.hpp"

namespace ideascore::shaping {

/// Step function with thresholds t1 < t2 < t3 and levels r0 <= r1 <= r2 <= r3;
/// intervals are half-open on the right, [t_i, t_{i+1}).
struct StepShape {
  std::array<double, 3> thresholds;
  std::array<double, 4> levels;
};

StepShape ig_shape(const RewardConfig& config);
StepShape sem_shape(const RewardConfig& config);

// Throws Error{NonfiniteInput} on NaN.
double step_shape(double x, const StepShape& shape);

// alpha = min(1, 1 - strength * (anchor - length) / anchor), in [1 - strength, 1].
double length_anchor(std::int64_t length, std::int64_t anchor, double strength);

struct FormatVerdict {
  bool valid = true;
  std::vector<InvalidReason> reasons;
};

// Blank reasoning is reported as EMPTY alone; otherwise TOO_SHORT (fewer than
// min_reasoning_chars code points) and HEADER_LEAK (a line starting with a
// forbidden prefix after leading whitespace) are checked independently.
FormatVerdict format_valid(std::string_view reasoning, const RewardConfig& config);

struct RewardTerms {
  double shaped_ig = 0.0;
  double shaped_sem = 0.0;
  double alpha = 1.0;
  double r_total = 0.0;
};

// R = alpha(length) * 1[valid] * (w_ig * f(delta_ig) + w_sem * f(delta_sem)).
RewardTerms composite_reward(double delta_ig, double delta_sem, std::int64_t reasoning_length,
                             const FormatVerdict& verdict, const RewardConfig& config);

}  // namespace ideascore::shaping
