#include <benchmark/benchmark.h>

#include "ideascore/dynamics.hpp"

using namespace ideascore;

namespace {

void BM_SimulateLadder(benchmark::State& state) {
  RewardConfig config;
  config.anchor_length = 1000;
  const auto ladder = dynamics::length_ladder(0.5, 1000);
  dynamics::SimulationParams p;
  p.steps = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    p.seed = seed++;
    benchmark::DoNotOptimize(dynamics::simulate_grpo_selection(ladder, p, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * p.group_size);
}
BENCHMARK(BM_SimulateLadder)->Arg(100)->Arg(1000);

}  // namespace
