#pragma once

#include <span>
#include <string>
#include <string_view>

#include "ideascore/providers.hpp"

namespace ideascore {
struct RolloutRecord;
}

namespace ideascore::csg {

enum class SectionMode { Full, Overview };

struct SemanticScores {
  double s_gen = 0.0;
  double s_base = 0.0;
  double delta_sem = 0.0;
};

// dot(a, b) / (|a| |b|). Throws Error{DimMismatch}, Error{ZeroVector}.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// The text a similarity is computed on under `mode`.
std::string_view section(std::string_view text, SectionMode mode, std::span<const std::string> header_prefixes);

// s_gen = cos(E(y_hat'), E(y*')), s_base = cos(E(q'), E(y*')), where the
// primes denote the section selected by `mode`. The copy-the-input baseline
// q = context + "\n" + motivation is sliced like a generation would be.
// Throws Error{EmptyText} when the generation or ground truth is empty.
SemanticScores contrastive_semantic_gain(const RolloutRecord& record, const Embedder& embedder, SectionMode mode,
                                         std::span<const std::string> header_prefixes);

}  // namespace ideascore::csg
