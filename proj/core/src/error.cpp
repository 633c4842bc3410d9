#include "ideascore/error.hpp"

namespace ideascore {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedLine: return "MALFORMED_LINE";
    case ErrorCode::MissingField: return "MISSING_FIELD";
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::ProviderUnavailable: return "PROVIDER_UNAVAILABLE";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::TokenizationMismatch: return "TOKENIZATION_MISMATCH";
    case ErrorCode::NonfiniteLogprob: return "NONFINITE_LOGPROB";
    case ErrorCode::EmptyText: return "EMPTY_TEXT";
    case ErrorCode::EmptySequence: return "EMPTY_SEQUENCE";
    case ErrorCode::EmptyMask: return "EMPTY_MASK";
    case ErrorCode::DimMismatch: return "DIM_MISMATCH";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::NonfiniteInput: return "NONFINITE_INPUT";
    case ErrorCode::GroupTooSmall: return "GROUP_TOO_SMALL";
    case ErrorCode::EmptyBatch: return "EMPTY_BATCH";
    case ErrorCode::CoverageExceedsTopics: return "COVERAGE_EXCEEDS_TOPICS";
    case ErrorCode::FixtureDrift: return "FIXTURE_DRIFT";
  }
  return "UNKNOWN";
}

}  // namespace ideascore
