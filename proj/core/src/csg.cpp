#include "ideascore/csg.hpp"

#include <cmath>

#include "ideascore/error.hpp"
#include "ideascore/record.hpp"
#include "ideascore/text.hpp"

namespace ideascore::csg {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimMismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    aa += a.values[i] * a.values[i];
    bb += b.values[i] * b.values[i];
  }
  if (aa == 0.0 || bb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

std::string_view section(std::string_view text, SectionMode mode, std::span<const std::string> header_prefixes) {
  return mode == SectionMode::Full ? text : text::overview_slice(text, header_prefixes);
}

SemanticScores contrastive_semantic_gain(const RolloutRecord& record, const Embedder& embedder, SectionMode mode,
                                         std::span<const std::string> header_prefixes) {
  if (record.generated_method.empty()) throw Error(ErrorCode::EmptyText, "generated_method is empty");
  if (record.ground_truth_method.empty()) throw Error(ErrorCode::EmptyText, "ground_truth_method is empty");

  const std::string input = record.input();
  const auto generated = section(record.generated_method, mode, header_prefixes);
  const auto truth = section(record.ground_truth_method, mode, header_prefixes);
  const auto baseline = section(input, mode, header_prefixes);

  const auto e_truth = embedder.embed(truth);
  const auto e_gen = embedder.embed(generated);
  SemanticScores s;
  s.s_gen = cosine_similarity(e_gen, e_truth);
  s.s_base = generated == baseline ? s.s_gen : cosine_similarity(embedder.embed(baseline), e_truth);
  s.delta_sem = s.s_gen - s.s_base;
  return s;
}

}  // namespace ideascore::csg
