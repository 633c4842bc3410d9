#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ideascore/config.hpp"

namespace ideascore::dynamics {

// mean / std; +infinity when std == 0 and mean > 0, -infinity when std == 0
// and mean < 0, and 0 when both are 0.
double sharpe(double mean, double std);

/// Information-gain yield of the topics a reasoning trace covers.
struct Topic {
  std::int64_t tokens = 1;  // high-entropy tokens tied to the topic
  double gain_mean = 0.0;
  double gain_std = 0.0;
};

struct TopicModel {
  std::vector<Topic> topics;
  // Number of topics covered by a trace of the given length; non-decreasing.
  std::function<std::int64_t(std::int64_t)> coverage;
  std::int64_t total_tokens = 1;
};

struct RewardMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// E[R] = (1/N) sum n_i mu_i and Var[R] = (1/N^2) sum n_i^2 sigma_i^2 over the
// first coverage(length) topics. Throws Error{CoverageExceedsTopics}.
RewardMoments topic_reward_moments(const TopicModel& model, std::int64_t length);

/// A reasoning strategy: reward ~ Normal(mean, std^2) at a fixed trace length.
struct StrategyProfile {
  std::string name;
  double reward_mean = 0.0;
  double reward_std = 0.0;
  std::int64_t cot_length = 1;
};

StrategyProfile strategy_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StrategyProfile& s);

struct SimulationParams {
  int steps = 1000;
  int group_size = 16;
  bool anchoring = false;
  double learning_rate = 0.1;
  // Curvature of the per-rollout utility A - risk_aversion * A^2 through which
  // advantages drive preferences. Zero gives the plain mean-advantage rule.
  double risk_aversion = 0.5;
  std::uint64_t seed = 0;
};

struct StepRecord {
  int step = 0;
  double mean_length = 0.0;          // over the rollouts sampled at this step
  std::vector<double> preferences;   // after the update, in input order
};

struct SimulationTrace {
  std::vector<StepRecord> steps;
  std::vector<double> final_preferences;
  std::vector<double> final_probabilities;
  double final_expected_length = 0.0;  // under the final softmax
  std::size_t winner = 0;              // index of the highest final preference
  std::string winner_name;
  std::uint64_t seed = 0;
};

// Softmax over `preferences`.
std::vector<double> softmax(std::span<const double> preferences);

// Seeded GRPO strategy-selection simulation.
//
// Each step draws a group of rollouts. Slot i picks a strategy by Gumbel-max
// on the preferences (noise keyed by step, slot and strategy name) and
// draws its reward as mean + std * z, with z keyed by step and slot only;
// with anchoring the reward is multiplied by length_anchor(cot_length).
// Group advantages A_i pass through u_i = A_i - risk_aversion * A_i^2, are
// centred within the group, and each sampled strategy's preference moves by
// learning_rate times the mean centred utility of its rollouts.
//
// Throws Error{GroupTooSmall} (fewer than two strategies or group_size < 2),
// Error{InvalidConfig} (bad parameters, duplicate names, missing
// anchor_length with anchoring on).
SimulationTrace simulate_grpo_selection(std::span<const StrategyProfile> strategies, const SimulationParams& params,
                                        const RewardConfig& config);

// Four strategies at lengths anchor * {1/4, 1/2, 1, 2} whose reward mixes a
// low-variance semantic part with an information-gain part whose spread
// grows with length, weighted by `ig_weight` (the composite-reward mix).
std::vector<StrategyProfile> length_ladder(double ig_weight, std::int64_t anchor_length);

// JSONL lines: one per step, then a summary object. Full precision.
nlohmann::json step_to_json(const StepRecord& step);
nlohmann::json summary_to_json(const SimulationTrace& trace, std::span<const StrategyProfile> strategies);

}  // namespace ideascore::dynamics
