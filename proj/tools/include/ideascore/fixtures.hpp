#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ideascore/config.hpp"
#include "ideascore/record.hpp"
#include "ideascore/report.hpp"

namespace ideascore::fixtures {

// Seed the committed fixtures were generated from.
inline constexpr std::uint64_t kDocumentedSeed = 20251014;
inline constexpr std::size_t kCorpusSize = 20;

// Synthetic corpus. Record kinds are fixed by position; the text is drawn
// from the seed:
//   0  copy baseline (generated method is context + "\n" + motivation)
//   1  perfect match (generated method is the ground truth)
//   2  empty reasoning          3  too short
//   4  header leak              5  short and header leak ("## Intro")
//   6  whitespace-only reasoning
//   7.. valid traces of varied length and overlap with the ground truth
std::vector<RolloutRecord> generate_corpus(std::uint64_t seed);

RewardConfig fixture_config();

// Scores with the builtin providers exactly as `ideascore score` does: the
// n-gram model (order 3, k = 1) fit on the corpus itself, hashed trigram
// embeddings, overview sections, token lengths.
std::vector<ScoreReport> score_corpus(const std::vector<RolloutRecord>& corpus, const RewardConfig& config);

// File contents: corpus.jsonl, config.json, golden.jsonl (full precision).
struct FixtureFiles {
  std::string corpus;
  std::string config;
  std::string golden;
};
FixtureFiles render(std::uint64_t seed);

void write_fixtures(const std::filesystem::path& dir, std::uint64_t seed);

// Throws Error{FixtureDrift} naming the first differing file and line.
void check_fixtures(const std::filesystem::path& dir, std::uint64_t seed);

std::vector<RolloutRecord> load_corpus(const std::filesystem::path& path);
std::vector<ScoreReport> load_golden(const std::filesystem::path& path);
ScoreReport report_from_json(const nlohmann::json& j);

}  // namespace ideascore::fixtures
