#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace ideascore {

/// One ideation sample: research context x, motivation m, reasoning trace z,
/// generated method and the ground-truth method y*.
struct RolloutRecord {
  std::string id;
  std::string context;
  std::string motivation;
  std::string reasoning;
  std::string generated_method;
  std::string ground_truth_method;
  std::optional<std::string> group_id;

  // q = context + "\n" + motivation, the policy input.
  std::string input() const;

  bool operator==(const RolloutRecord&) const = default;
};

// Parses one JSONL object. Unknown fields are ignored.
// Throws Error{MalformedLine} or Error{MissingField}.
RolloutRecord parse_rollout_record(std::string_view line);
RolloutRecord rollout_record_from_json(const nlohmann::json& object);

nlohmann::json to_json(const RolloutRecord& record);
std::string serialize(const RolloutRecord& record);

}  // namespace ideascore
