#include "ideascore/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ideascore/error.hpp"
#include "ideascore/grpo.hpp"
#include "ideascore/providers.hpp"
#include "ideascore/random.hpp"
#include "ideascore/shaping.hpp"

namespace ideascore::dynamics {
namespace {

enum Purpose : std::uint32_t { kRewardNoise = 0, kSelectionNoise = 1 };

}  // namespace

double sharpe(double mean, double std) {
  if (std == 0.0) {
    if (mean > 0.0) return std::numeric_limits<double>::infinity();
    if (mean < 0.0) return -std::numeric_limits<double>::infinity();
    return 0.0;
  }
  return mean / std;
}

RewardMoments topic_reward_moments(const TopicModel& model, std::int64_t length) {
  const std::int64_t k = model.coverage ? model.coverage(length) : 0;
  if (k < 0 || static_cast<std::size_t>(k) > model.topics.size()) {
    throw Error(ErrorCode::CoverageExceedsTopics,
                "coverage " + std::to_string(k) + " with " + std::to_string(model.topics.size()) + " topics");
  }
  const auto n_total = static_cast<double>(model.total_tokens);
  RewardMoments m;
  for (std::int64_t i = 0; i < k; ++i) {
    const auto& t = model.topics[static_cast<std::size_t>(i)];
    const auto n = static_cast<double>(t.tokens);
    m.mean += n * t.gain_mean;
    m.variance += n * n * t.gain_std * t.gain_std;
  }
  m.mean /= n_total;
  m.variance /= n_total * n_total;
  return m;
}

StrategyProfile strategy_from_json(const nlohmann::json& j) {
  try {
    StrategyProfile s;
    s.name = j.at("name").get<std::string>();
    s.reward_mean = j.at("reward_mean").get<double>();
    s.reward_std = j.at("reward_std").get<double>();
    s.cot_length = j.at("cot_length").get<std::int64_t>();
    if (s.name.empty()) throw Error(ErrorCode::MissingField, "strategy name is empty");
    if (!(s.reward_std >= 0.0) || !std::isfinite(s.reward_std) || !std::isfinite(s.reward_mean)) {
      throw Error(ErrorCode::InvalidConfig, "strategy '" + s.name + "' needs finite mean and std >= 0");
    }
    if (s.cot_length < 1) throw Error(ErrorCode::InvalidConfig, "strategy '" + s.name + "' needs cot_length >= 1");
    return s;
  } catch (const nlohmann::json::out_of_range& e) {
    throw Error(ErrorCode::MissingField, e.what());
  } catch (const nlohmann::json::type_error& e) {
    throw Error(ErrorCode::MalformedLine, e.what());
  }
}

nlohmann::json to_json(const StrategyProfile& s) {
  return {{"name", s.name}, {"reward_mean", s.reward_mean}, {"reward_std", s.reward_std}, {"cot_length", s.cot_length}};
}

std::vector<double> softmax(std::span<const double> preferences) {
  std::vector<double> p(preferences.begin(), preferences.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double z = 0.0;
  for (double& x : p) {
    x = std::exp(x - top);
    z += x;
  }
  for (double& x : p) x /= z;
  return p;
}

SimulationTrace simulate_grpo_selection(std::span<const StrategyProfile> strategies, const SimulationParams& params,
                                        const RewardConfig& config) {
  const std::size_t n = strategies.size();
  if (n < 2) throw Error(ErrorCode::GroupTooSmall, "need at least two strategies");
  if (params.group_size < 2) throw Error(ErrorCode::GroupTooSmall, "group_size must be >= 2");
  if (params.steps < 1) throw Error(ErrorCode::InvalidConfig, "steps must be >= 1");
  if (!std::isfinite(params.learning_rate) || !std::isfinite(params.risk_aversion) || params.risk_aversion < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "learning_rate must be finite and risk_aversion finite and >= 0");
  }
  std::set<std::string> names;
  for (const auto& s : strategies) {
    if (!names.insert(s.name).second) throw Error(ErrorCode::InvalidConfig, "duplicate strategy name '" + s.name + "'");
  }

  // Per-strategy constants: reward scale and the name-derived noise stream.
  std::vector<double> scale(n, 1.0);
  std::vector<std::uint64_t> name_hash(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (params.anchoring) {
      scale[s] = shaping::length_anchor(strategies[s].cot_length, config.require_anchor_length(),
                                        config.anchor_strength);
    }
    name_hash[s] = fnv1a64(strategies[s].name);
  }

  const auto seed_key = random::key_from_seed(params.seed);
  const auto g = static_cast<std::size_t>(params.group_size);
  std::vector<double> pref(n, 0.0);
  std::vector<std::size_t> chosen(g);
  std::vector<double> rewards(g);
  std::vector<double> utility(g);
  std::vector<double> util_sum(n);
  std::vector<std::size_t> util_count(n);

  SimulationTrace trace;
  trace.seed = params.seed;
  trace.steps.reserve(static_cast<std::size_t>(params.steps));

  for (int step = 0; step < params.steps; ++step) {
    const auto step_id = static_cast<std::uint32_t>(step);
    double length_sum = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      const auto slot = static_cast<std::uint32_t>(i);
      // Gumbel-max sampling from softmax(pref).
      std::size_t best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < n; ++s) {
        const random::Key key{seed_key[0] ^ static_cast<std::uint32_t>(name_hash[s] >> 32), seed_key[1]};
        const auto bits = random::philox4x32_10(
            {step_id, slot, kSelectionNoise, static_cast<std::uint32_t>(name_hash[s])}, key);
        const double score = pref[s] - std::log(-std::log(random::uniform_open01(bits)));
        if (score > best_score || (score == best_score && strategies[s].name < strategies[best].name)) {
          best = s;
          best_score = score;
        }
      }
      chosen[i] = best;
      const double z = random::standard_normal(
          random::uniform_open01(random::philox4x32_10({step_id, slot, kRewardNoise, 0}, seed_key)));
      const auto& st = strategies[best];
      rewards[i] = scale[best] * (st.reward_mean + st.reward_std * z);
      length_sum += static_cast<double>(st.cot_length);
    }

    const auto adv = grpo::group_advantages(rewards);
    double mean_u = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
      const double a = adv.advantages[i];
      utility[i] = a - params.risk_aversion * a * a;
      mean_u += utility[i];
    }
    mean_u /= static_cast<double>(g);
    std::fill(util_sum.begin(), util_sum.end(), 0.0);
    std::fill(util_count.begin(), util_count.end(), 0);
    for (std::size_t i = 0; i < g; ++i) {
      util_sum[chosen[i]] += utility[i] - mean_u;
      ++util_count[chosen[i]];
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (util_count[s] > 0) pref[s] += params.learning_rate * util_sum[s] / static_cast<double>(util_count[s]);
    }
    trace.steps.push_back({step, length_sum / static_cast<double>(g), pref});
  }

  trace.final_preferences = pref;
  trace.final_probabilities = softmax(pref);
  for (std::size_t s = 0; s < n; ++s) {
    trace.final_expected_length += trace.final_probabilities[s] * static_cast<double>(strategies[s].cot_length);
    const bool better = pref[s] > pref[trace.winner] ||
                        (pref[s] == pref[trace.winner] && strategies[s].name < strategies[trace.winner].name);
    if (better) trace.winner = s;
  }
  trace.winner_name = strategies[trace.winner].name;
  return trace;
}

std::vector<StrategyProfile> length_ladder(double ig_weight, std::int64_t anchor_length) {
  struct Rung {
    const char* name;
    double length_factor;
    double sem_mean, sem_std;
    double ig_mean, ig_std;
  };
  static constexpr Rung kRungs[] = {
      {"quarter", 0.25, 0.40, 0.05, 0.45, 0.05},
      {"half", 0.50, 0.46, 0.05, 0.50, 0.15},
      {"anchor", 1.00, 0.52, 0.05, 0.55, 0.30},
      {"double", 2.00, 0.58, 0.05, 0.60, 0.50},
  };
  const double w = ig_weight;
  std::vector<StrategyProfile> out;
  for (const auto& r : kRungs) {
    StrategyProfile s;
    s.name = r.name;
    s.cot_length = std::max<std::int64_t>(1, std::llround(r.length_factor * static_cast<double>(anchor_length)));
    s.reward_mean = w * r.ig_mean + (1.0 - w) * r.sem_mean;
    s.reward_std = std::sqrt(w * w * r.ig_std * r.ig_std + (1.0 - w) * (1.0 - w) * r.sem_std * r.sem_std);
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::json step_to_json(const StepRecord& step) {
  return {{"step", step.step}, {"mean_length", step.mean_length}, {"preferences", step.preferences}};
}

nlohmann::json summary_to_json(const SimulationTrace& trace, std::span<const StrategyProfile> strategies) {
  nlohmann::json names = nlohmann::json::array();
  for (const auto& s : strategies) names.push_back(s.name);
  return {{"summary",
           {{"seed", trace.seed},
            {"steps", trace.steps.size()},
            {"strategies", names},
            {"final_preferences", trace.final_preferences},
            {"final_probabilities", trace.final_probabilities},
            {"final_expected_length", trace.final_expected_length},
            {"winner", trace.winner_name}}}};
}

}  // namespace ideascore::dynamics
