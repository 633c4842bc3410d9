#include "ideascore/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ideascore/error.hpp"

namespace ideascore {
namespace {

const std::set<std::string> kKnownKeys = {
    "w_ig",          "w_sem",           "entropy_quantile",    "ig_thresholds",
    "sem_thresholds", "shaping_levels", "anchor_length",       "anchor_strength",
    "min_reasoning_chars", "forbidden_header_patterns", "clip_low", "clip_high",
    "group_size",    "kl_coefficient",
};

template <typename T>
void read(const nlohmann::json& raw, const char* key, T& out, std::vector<std::string>& errors) {
  const auto it = raw.find(key);
  if (it == raw.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    errors.push_back(std::string(key) + ": wrong type");
  }
}

template <std::size_t N>
bool strictly_increasing(const std::array<double, N>& v) {
  for (std::size_t i = 1; i < N; ++i) {
    if (!(v[i - 1] < v[i])) return false;
  }
  return true;
}

template <std::size_t N>
bool all_finite(const std::array<double, N>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

std::int64_t RewardConfig::require_anchor_length() const {
  if (!anchor_length) {
    throw Error(ErrorCode::InvalidConfig, "anchor_length is not set; run anchor-calibrate or set it explicitly");
  }
  return *anchor_length;
}

std::vector<std::string> config_violations(const RewardConfig& c) {
  std::vector<std::string> v;
  if (!(c.w_ig >= 0.0 && c.w_ig <= 1.0)) v.emplace_back("w_ig must lie in [0,1]");
  if (!(c.w_sem >= 0.0 && c.w_sem <= 1.0)) v.emplace_back("w_sem must lie in [0,1]");
  if (!(std::abs(c.w_ig + c.w_sem - 1.0) <= 1e-9)) v.emplace_back("w_ig + w_sem must equal 1");
  if (!(c.entropy_quantile > 0.0 && c.entropy_quantile <= 1.0)) v.emplace_back("entropy_quantile must lie in (0,1]");
  if (!all_finite(c.ig_thresholds) || !strictly_increasing(c.ig_thresholds)) {
    v.emplace_back("ig_thresholds must be finite and strictly increasing");
  }
  if (!all_finite(c.sem_thresholds) || !strictly_increasing(c.sem_thresholds)) {
    v.emplace_back("sem_thresholds must be finite and strictly increasing");
  }
  bool levels_ok = all_finite(c.shaping_levels);
  for (std::size_t i = 1; i < c.shaping_levels.size(); ++i) {
    levels_ok = levels_ok && c.shaping_levels[i - 1] <= c.shaping_levels[i];
  }
  if (!levels_ok) v.emplace_back("shaping_levels must be finite and non-decreasing");
  if (c.anchor_length && *c.anchor_length < 1) v.emplace_back("anchor_length must be a positive integer");
  if (!(c.anchor_strength >= 0.0 && c.anchor_strength <= 1.0)) v.emplace_back("anchor_strength must lie in [0,1]");
  if (c.min_reasoning_chars < 1) v.emplace_back("min_reasoning_chars must be a positive integer");
  if (!(c.clip_low > 0.0 && std::isfinite(c.clip_low))) v.emplace_back("clip_low must be positive");
  if (!(c.clip_high > 0.0 && std::isfinite(c.clip_high))) v.emplace_back("clip_high must be positive");
  if (c.group_size < 2) v.emplace_back("group_size must be at least 2");
  if (!std::isfinite(c.kl_coefficient)) v.emplace_back("kl_coefficient must be finite");
  return v;
}

RewardConfig validate_config(const nlohmann::json& raw) {
  RewardConfig c;
  std::vector<std::string> errors;
  if (raw.is_null()) return c;
  if (!raw.is_object()) throw Error(ErrorCode::InvalidConfig, "config document must be an object");

  for (const auto& [key, _] : raw.items()) {
    if (!kKnownKeys.contains(key)) errors.push_back("unknown key '" + key + "'");
  }
  read(raw, "w_ig", c.w_ig, errors);
  read(raw, "w_sem", c.w_sem, errors);
  // A single supplied weight implies its complement.
  if (raw.contains("w_ig") && !raw.contains("w_sem") && raw["w_ig"].is_number()) c.w_sem = 1.0 - c.w_ig;
  if (raw.contains("w_sem") && !raw.contains("w_ig") && raw["w_sem"].is_number()) c.w_ig = 1.0 - c.w_sem;
  read(raw, "entropy_quantile", c.entropy_quantile, errors);
  read(raw, "ig_thresholds", c.ig_thresholds, errors);
  read(raw, "sem_thresholds", c.sem_thresholds, errors);
  read(raw, "shaping_levels", c.shaping_levels, errors);
  if (const auto it = raw.find("anchor_length"); it != raw.end() && !it->is_null()) {
    if (it->is_number_integer()) c.anchor_length = it->get<std::int64_t>();
    else errors.emplace_back("anchor_length: wrong type");
  }
  read(raw, "anchor_strength", c.anchor_strength, errors);
  read(raw, "min_reasoning_chars", c.min_reasoning_chars, errors);
  read(raw, "forbidden_header_patterns", c.forbidden_header_patterns, errors);
  read(raw, "clip_low", c.clip_low, errors);
  read(raw, "clip_high", c.clip_high, errors);
  read(raw, "group_size", c.group_size, errors);
  read(raw, "kl_coefficient", c.kl_coefficient, errors);

  for (auto& v : config_violations(c)) errors.push_back(std::move(v));
  if (!errors.empty()) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < errors.size(); ++i) msg << (i ? "; " : "") << errors[i];
    throw Error(ErrorCode::InvalidConfig, msg.str());
  }
  return c;
}

RewardConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file " + path.string());
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return validate_config(raw);
}

nlohmann::json to_json(const RewardConfig& c) {
  nlohmann::json j = {
      {"w_ig", c.w_ig},
      {"w_sem", c.w_sem},
      {"entropy_quantile", c.entropy_quantile},
      {"ig_thresholds", c.ig_thresholds},
      {"sem_thresholds", c.sem_thresholds},
      {"shaping_levels", c.shaping_levels},
      {"anchor_strength", c.anchor_strength},
      {"min_reasoning_chars", c.min_reasoning_chars},
      {"forbidden_header_patterns", c.forbidden_header_patterns},
      {"clip_low", c.clip_low},
      {"clip_high", c.clip_high},
      {"group_size", c.group_size},
      {"kl_coefficient", c.kl_coefficient},
  };
  if (c.anchor_length) j["anchor_length"] = *c.anchor_length;
  return j;
}

}  // namespace ideascore
