#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ideascore {

enum class ErrorCode {
  MalformedLine,
  MissingField,
  InvalidConfig,
  EmptyCorpus,
  ProviderUnavailable,
  LengthMismatch,
  TokenizationMismatch,
  NonfiniteLogprob,
  EmptyText,
  EmptySequence,
  EmptyMask,
  DimMismatch,
  ZeroVector,
  NonfiniteInput,
  GroupTooSmall,
  EmptyBatch,
  CoverageExceedsTopics,
  FixtureDrift,
};

// Upper-snake name used on the wire and in diagnostics, e.g. "MISSING_FIELD".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ideascore
