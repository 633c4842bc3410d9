#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "ideascore/grpo.hpp"

using namespace ideascore;

namespace {

void BM_GroupAdvantages(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rewards(static_cast<std::size_t>(state.range(0)));
  for (auto& r : rewards) r = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(grpo::group_advantages(rewards));
}
BENCHMARK(BM_GroupAdvantages)->Arg(16)->Arg(256);

// 8 groups of 16 rollouts, `range(0)` tokens each.
void BM_ClippedObjective(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> lr(-0.5, 0.5), u(0.0, 1.0);
  std::vector<grpo::RolloutGroup> groups(8);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    groups[g].group_id = "g" + std::to_string(g);
    std::vector<double> rewards;
    for (int i = 0; i < 16; ++i) {
      grpo::RatioSequence seq;
      for (int t = 0; t < state.range(0); ++t) seq.ratios.push_back(std::exp(lr(rng)));
      groups[g].rollouts.push_back(std::move(seq));
      rewards.push_back(u(rng));
    }
    groups[g].advantages = grpo::group_advantages(rewards);
  }
  for (auto _ : state) benchmark::DoNotOptimize(grpo::clipped_objective(groups, 0.2, 0.28));
  state.SetItemsProcessed(state.iterations() * 8 * 16 * state.range(0));
}
BENCHMARK(BM_ClippedObjective)->Arg(64)->Arg(1024);

}  // namespace
