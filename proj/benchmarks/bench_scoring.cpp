#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ideascore/scoring.hpp"

using namespace ideascore;

namespace {

RolloutRecord make_record(std::size_t reasoning_chars) {
  RolloutRecord r;
  r.id = "bench";
  r.context = "Sensor streams arrive with irregular gaps and drifting calibration.";
  r.motivation = "Interpolation ignores the drift and inflates downstream error.";
  std::string reasoning;
  while (reasoning.size() < reasoning_chars) reasoning += "We model the drift as a latent walk and fit it jointly. ";
  r.reasoning = reasoning.substr(0, reasoning_chars);
  r.generated_method = "## Method\nA latent drift model fit jointly with the imputer.\n## Details\nKalman smoothing.";
  r.ground_truth_method = "## Method\nJoint estimation of drift and gaps with a state-space model.\n## Details\nEM.";
  return r;
}

CharNGramModel model_for(const RolloutRecord& r) {
  std::vector<std::string> corpus;
  for (auto t : reference_corpus_texts(r)) corpus.emplace_back(t);
  return fit_char_ngram(corpus);
}

void BM_ScoreRecord(benchmark::State& state) {
  const auto record = make_record(static_cast<std::size_t>(state.range(0)));
  const auto model = model_for(record);
  const HashedTrigramEmbedder embedder;
  RewardConfig config;
  config.anchor_length = 1500;
  const ScoringContext ctx{model, model, embedder, config, ScoringOptions{}};
  for (auto _ : state) benchmark::DoNotOptimize(score_record(record, ctx));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScoreRecord)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_FitCharNGram(benchmark::State& state) {
  const auto record = make_record(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(model_for(record));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitCharNGram)->Arg(4000)->Arg(64000);

void BM_Embed(benchmark::State& state) {
  const std::string text(static_cast<std::size_t>(state.range(0)), 'x');
  const HashedTrigramEmbedder embedder;
  for (auto _ : state) benchmark::DoNotOptimize(embedder.embed(text));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Embed)->Arg(256)->Arg(8192);

}  // namespace
