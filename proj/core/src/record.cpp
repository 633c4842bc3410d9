#include "ideascore/record.hpp"

#include "ideascore/error.hpp"
#include "ideascore/text.hpp"

namespace ideascore {
namespace {

std::string required_string(const nlohmann::json& object, const char* key, bool non_empty) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) {
    throw Error(ErrorCode::MissingField, std::string("field '") + key + "' is absent");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::MalformedLine, std::string("field '") + key + "' must be a string");
  }
  auto value = it->get<std::string>();
  if (non_empty && value.empty()) {
    throw Error(ErrorCode::MissingField, std::string("field '") + key + "' is empty");
  }
  return value;
}

}  // namespace

std::string RolloutRecord::input() const { return text::join_input(context, motivation); }

RolloutRecord rollout_record_from_json(const nlohmann::json& object) {
  if (!object.is_object()) throw Error(ErrorCode::MalformedLine, "record is not a JSON object");
  RolloutRecord r;
  r.id = required_string(object, "id", true);
  r.context = required_string(object, "context", true);
  r.motivation = required_string(object, "motivation", false);
  r.reasoning = required_string(object, "reasoning", false);
  r.generated_method = required_string(object, "generated_method", false);
  r.ground_truth_method = required_string(object, "ground_truth_method", true);
  if (const auto it = object.find("group_id"); it != object.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::MalformedLine, "field 'group_id' must be a string");
    r.group_id = it->get<std::string>();
  }
  return r;
}

RolloutRecord parse_rollout_record(std::string_view line) {
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedLine, e.what());
  }
  return rollout_record_from_json(object);
}

nlohmann::json to_json(const RolloutRecord& record) {
  nlohmann::json j = {
      {"id", record.id},
      {"context", record.context},
      {"motivation", record.motivation},
      {"reasoning", record.reasoning},
      {"generated_method", record.generated_method},
      {"ground_truth_method", record.ground_truth_method},
  };
  if (record.group_id) j["group_id"] = *record.group_id;
  return j;
}

std::string serialize(const RolloutRecord& record) { return to_json(record).dump(); }

}  // namespace ideascore
