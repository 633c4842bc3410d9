#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ideascore {

/// Weights, thresholds, anchors and gates of the composite reward, plus the
/// GRPO settings used by the objective evaluator and the simulator.
///
/// Key names in the config document match the member names exactly.
/// `kl_coefficient` is carried for completeness and never enters any
/// computation.
struct RewardConfig {
  double w_ig = 0.3;
  double w_sem = 0.7;
  double entropy_quantile = 0.25;
  std::array<double, 3> ig_thresholds{1.0, 1.5, 2.0};
  std::array<double, 3> sem_thresholds{0.01, 0.05, 0.1};
  std::array<double, 4> shaping_levels{0.0, 0.5, 0.8, 1.0};
  // No universal default: set it from the reference model's mean reasoning
  // length (see `anchor-calibrate`). Scoring fails while it is unset.
  std::optional<std::int64_t> anchor_length;
  double anchor_strength = 0.5;
  std::int64_t min_reasoning_chars = 1000;
  std::vector<std::string> forbidden_header_patterns{"##", "###"};
  double clip_low = 0.2;
  double clip_high = 0.28;
  int group_size = 16;
  double kl_coefficient = 0.001;

  // Returns anchor_length or throws Error{InvalidConfig}.
  std::int64_t require_anchor_length() const;

  bool operator==(const RewardConfig&) const = default;
};

// One human-readable message per violated invariant; empty when valid.
std::vector<std::string> config_violations(const RewardConfig& config);

// Fills missing keys with defaults and checks every invariant.
// Throws Error{InvalidConfig} listing all violations (and unknown keys).
RewardConfig validate_config(const nlohmann::json& raw);
RewardConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RewardConfig& config);

}  // namespace ideascore
