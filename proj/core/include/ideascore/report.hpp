#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ideascore {

enum class InvalidReason { Empty, TooShort, HeaderLeak };
std::string_view to_string(InvalidReason reason) noexcept;

enum class LengthUnit { Tokens, Chars };
std::string_view to_string(LengthUnit unit) noexcept;

// Report numbers are rounded to 6 significant digits unless Full is asked for.
enum class NumberFormat { Rounded, Full };

// Round-trips through "%.6g" for Rounded, identity for Full.
double format_number(double value, NumberFormat format);

/// Per-rollout reward breakdown.
struct ScoreReport {
  std::string id;
  std::optional<std::string> group_id;
  double delta_ig = 0.0;
  double delta_sem = 0.0;
  double s_gen = 0.0;
  double s_base = 0.0;
  double shaped_ig = 0.0;
  double shaped_sem = 0.0;
  double alpha = 1.0;
  bool valid = false;
  std::vector<InvalidReason> invalid_reasons;
  double r_total = 0.0;
  std::int64_t reasoning_length = 0;
  LengthUnit length_unit = LengthUnit::Tokens;
};

nlohmann::json to_json(const ScoreReport& report, NumberFormat format);

}  // namespace ideascore
