#include "ideascore/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace ideascore {

std::string_view to_string(InvalidReason reason) noexcept {
  switch (reason) {
    case InvalidReason::Empty: return "EMPTY";
    case InvalidReason::TooShort: return "TOO_SHORT";
    case InvalidReason::HeaderLeak: return "HEADER_LEAK";
  }
  return "UNKNOWN";
}

std::string_view to_string(LengthUnit unit) noexcept {
  return unit == LengthUnit::Tokens ? "tokens" : "chars";
}

double format_number(double value, NumberFormat format) {
  if (format == NumberFormat::Full) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const ScoreReport& r, NumberFormat format) {
  auto num = [format](double v) { return format_number(v, format); };
  nlohmann::json reasons = nlohmann::json::array();
  for (auto reason : r.invalid_reasons) reasons.push_back(to_string(reason));
  nlohmann::json j = {
      {"id", r.id},
      {"delta_ig", num(r.delta_ig)},
      {"delta_sem", num(r.delta_sem)},
      {"s_gen", num(r.s_gen)},
      {"s_base", num(r.s_base)},
      {"shaped_ig", num(r.shaped_ig)},
      {"shaped_sem", num(r.shaped_sem)},
      {"alpha", num(r.alpha)},
      {"valid", r.valid},
      {"invalid_reasons", std::move(reasons)},
      {"r_total", num(r.r_total)},
      {"reasoning_length", r.reasoning_length},
      {"length_unit", to_string(r.length_unit)},
  };
  if (r.group_id) j["group_id"] = *r.group_id;
  return j;
}

}  // namespace ideascore
