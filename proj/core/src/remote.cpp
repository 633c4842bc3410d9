#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ideascore/error.hpp"
#include "ideascore/providers.hpp"

namespace ideascore {
namespace {

nlohmann::json parse_reply(const std::string& body, const std::string& path) {
  try {
    auto j = nlohmann::json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::ProviderUnavailable, path + ": reply is not an object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, path + ": malformed reply: " + e.what());
  }
}

template <typename T>
std::vector<T> array_field(const nlohmann::json& reply, const char* key, const std::string& path) {
  const auto it = reply.find(key);
  if (it == reply.end() || !it->is_array()) {
    throw Error(ErrorCode::ProviderUnavailable, path + ": reply lacks array '" + key + "'");
  }
  try {
    return it->get<std::vector<T>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, path + ": bad '" + key + "': " + e.what());
  }
}

}  // namespace

RemoteProvider::RemoteProvider(std::string base_url, double timeout_seconds)
    : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  if (!base_url_.starts_with("http://") && !base_url_.starts_with("https://")) {
    throw Error(ErrorCode::ProviderUnavailable, "provider URL must start with http:// or https://: " + base_url_);
  }
}

std::string RemoteProvider::post(const std::string& path, const std::string& body) const {
  httplib::Client client(base_url_);
  const auto secs = static_cast<time_t>(timeout_seconds_);
  const auto usecs = static_cast<time_t>((timeout_seconds_ - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(path, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::ProviderUnavailable, base_url_ + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::ProviderUnavailable, base_url_ + path + ": HTTP status " + std::to_string(res->status));
  }
  return res->body;
}

LogProbSequence RemoteProvider::token_logprobs(std::string_view conditioning, std::string_view target) const {
  if (target.empty()) throw Error(ErrorCode::EmptyText, "target is empty");
  const std::string path = "/v1/logprobs";
  const nlohmann::json request = {{"conditioning", conditioning}, {"target", target}};
  const auto reply = parse_reply(post(path, request.dump()), path);
  LogProbSequence out;
  out.tokens = array_field<std::string>(reply, "tokens", path);
  out.logprobs = array_field<double>(reply, "logprobs", path);
  if (out.tokens.size() != out.logprobs.size() || out.tokens.empty()) {
    throw Error(ErrorCode::LengthMismatch, path + ": " + std::to_string(out.tokens.size()) + " tokens but " +
                                               std::to_string(out.logprobs.size()) + " log-probabilities");
  }
  for (double lp : out.logprobs) {
    if (!std::isfinite(lp)) throw Error(ErrorCode::NonfiniteLogprob, path + ": non-finite log-probability");
    if (lp > 0.0) throw Error(ErrorCode::ProviderUnavailable, path + ": positive log-probability");
  }
  return out;
}

EntropySequence RemoteProvider::token_entropy(std::string_view conditioning, std::string_view target) const {
  if (target.empty()) throw Error(ErrorCode::EmptyText, "target is empty");
  const std::string path = "/v1/entropy";
  const nlohmann::json request = {{"conditioning", conditioning}, {"target", target}};
  const auto reply = parse_reply(post(path, request.dump()), path);
  EntropySequence out;
  out.tokens = array_field<std::string>(reply, "tokens", path);
  out.entropies = array_field<double>(reply, "entropies", path);
  if (out.tokens.size() != out.entropies.size() || out.tokens.empty()) {
    throw Error(ErrorCode::LengthMismatch, path + ": " + std::to_string(out.tokens.size()) + " tokens but " +
                                               std::to_string(out.entropies.size()) + " entropies");
  }
  for (double h : out.entropies) {
    if (!std::isfinite(h) || h < 0.0) throw Error(ErrorCode::ProviderUnavailable, path + ": invalid entropy");
  }
  return out;
}

EmbeddingVector RemoteProvider::embed(std::string_view text) const {
  if (text.empty()) throw Error(ErrorCode::EmptyText, "cannot embed empty text");
  const std::string path = "/v1/embed";
  const nlohmann::json request = {{"text", text}};
  const auto reply = parse_reply(post(path, request.dump()), path);
  EmbeddingVector v{array_field<double>(reply, "vector", path)};
  if (v.values.empty()) throw Error(ErrorCode::ProviderUnavailable, path + ": empty vector");
  l2_normalize(v);
  return v;
}

}  // namespace ideascore
