// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ideascore/csg.hpp"
#include "ideascore/dynamics.hpp"
#include "ideascore/eaig.hpp"
#include "ideascore/error.hpp"
#include "ideascore/fixtures.hpp"
#include "ideascore/grpo.hpp"
#include "ideascore/providers.hpp"
#include "ideascore/shaping.hpp"

using namespace ideascore;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(IDEASCORE_SOURCE_DIR) / "fixtures";

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome shaping_table() {
  const RewardConfig c;
  struct Probe {
    const shaping::StepShape shape;
    double x;
    double expected;
  };
  const auto ig = shaping::ig_shape(c);
  const auto sem = shaping::sem_shape(c);
  const double below = -std::numeric_limits<double>::infinity();
  const std::vector<Probe> boundary = {
      {ig, std::nextafter(1.0, below), 0.0}, {ig, 1.0, 0.5},  {ig, 1.5, 0.8},  {ig, 2.0, 1.0},
      {sem, std::nextafter(0.01, below), 0.0}, {sem, 0.01, 0.5}, {sem, 0.05, 0.8}, {sem, 0.1, 1.0},
  };
  const std::vector<Probe> interior = {
      {ig, 0.5, 0.0},    {ig, 1.25, 0.5},  {ig, 1.7, 0.8},   {ig, 3.0, 1.0},
      {sem, -0.2, 0.0},  {sem, 0.04, 0.5}, {sem, 0.07, 0.8}, {sem, 0.5, 1.0},
  };
  int exact = 0;
  for (const auto* set : {&boundary, &interior}) {
    for (const auto& p : *set) exact += shaping::step_shape(p.x, p.shape) == p.expected;
  }
  return {exact == 16, fmt("%d/16 probes exact", exact)};
}

// --- 2 ---------------------------------------------------------------------

Outcome golden_determinism() {
  const auto corpus = fixtures::load_corpus(kFixtures / "corpus.jsonl");
  const auto config = load_config(kFixtures / "config.json");
  const auto golden = fixtures::load_golden(kFixtures / "golden.jsonl");
  if (corpus.size() != fixtures::kCorpusSize || golden.size() != corpus.size()) {
    return {false, "fixture files have the wrong record count"};
  }
  double worst = 0.0;
  int mismatched = 0;
  for (int pass = 0; pass < 2; ++pass) {
    const auto reports = fixtures::score_corpus(corpus, config);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& a = reports[i];
      const auto& g = golden[i];
      for (auto [x, y] : {std::pair{a.delta_ig, g.delta_ig}, {a.delta_sem, g.delta_sem}, {a.s_gen, g.s_gen},
                          {a.s_base, g.s_base}, {a.shaped_ig, g.shaped_ig}, {a.shaped_sem, g.shaped_sem},
                          {a.alpha, g.alpha}, {a.r_total, g.r_total}}) {
        worst = std::max(worst, std::abs(x - y));
      }
      mismatched += a.id != g.id || a.valid != g.valid || a.invalid_reasons != g.invalid_reasons ||
                    a.reasoning_length != g.reasoning_length || a.length_unit != g.length_unit;
    }
  }
  return {worst <= 1e-9 && mismatched == 0,
          fmt("2 passes x %zu records, max field error %.3g, %d categorical mismatches", corpus.size(), worst,
              mismatched)};
}

// --- 3 ---------------------------------------------------------------------

Outcome advantage_properties() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(2, 16);
  std::uniform_real_distribution<double> reward(-5.0, 5.0), scale(0.0, 10.0), shift(-100.0, 100.0);
  double worst_mean = 0.0, worst_var = 0.0, worst_affine = 0.0;
  int groups = 0;
  while (groups < 1000) {
    std::vector<double> r(static_cast<std::size_t>(size(rng)));
    for (auto& x : r) x = reward(rng);
    const auto a = grpo::group_advantages(r);
    if (a.std < grpo::kDegenerateStd) continue;
    ++groups;
    double mean = 0.0, var = 0.0;
    for (double x : a.advantages) mean += x;
    mean /= static_cast<double>(r.size());
    for (double x : a.advantages) var += (x - mean) * (x - mean);
    var /= static_cast<double>(r.size());
    worst_mean = std::max(worst_mean, std::abs(mean));
    worst_var = std::max(worst_var, std::abs(var - 1.0));

    double k = 0.0;
    while (k == 0.0) k = scale(rng);  // a in (0, 10]
    if (groups == 1) k = 10.0;
    const double b = shift(rng);
    std::vector<double> t(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) t[i] = k * r[i] + b;
    const auto at = grpo::group_advantages(t);
    for (std::size_t i = 0; i < r.size(); ++i) {
      worst_affine = std::max(worst_affine, std::abs(at.advantages[i] - a.advantages[i]));
    }
  }
  return {worst_mean <= 1e-9 && worst_var <= 1e-9 && worst_affine <= 1e-9,
          fmt("%d groups, |mean| %.2g, |var-1| %.2g, affine drift %.2g", groups, worst_mean, worst_var,
              worst_affine)};
}

// --- 4 ---------------------------------------------------------------------

double naive_objective(const std::vector<std::vector<std::vector<double>>>& ratios,
                       const std::vector<std::vector<double>>& adv, double lo, double hi, bool per_group) {
  double batch_sum = 0.0, batch_tokens = 0.0, group_means = 0.0;
  for (std::size_t g = 0; g < ratios.size(); ++g) {
    double sum = 0.0, tokens = 0.0;
    for (std::size_t i = 0; i < ratios[g].size(); ++i) {
      for (double r : ratios[g][i]) {
        const double clipped = std::min(std::max(r, 1.0 - lo), 1.0 + hi);
        sum += std::min(r * adv[g][i], clipped * adv[g][i]);
        tokens += 1.0;
      }
    }
    batch_sum += sum;
    batch_tokens += tokens;
    group_means += sum / tokens;
  }
  return per_group ? group_means / static_cast<double>(ratios.size()) : batch_sum / batch_tokens;
}

Outcome clipped_oracle() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> n_groups(1, 4), n_rollouts(2, 5), n_tokens(1, 12);
  std::uniform_real_distribution<double> log_ratio(-0.6, 0.6), reward(0.0, 1.0), eps(0.05, 0.4);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    // The first half uses the asymmetric 0.2 / 0.28 setting.
    const double lo = instance < 50 ? 0.2 : eps(rng);
    const double hi = instance < 50 ? 0.28 : eps(rng);
    std::vector<grpo::RolloutGroup> groups;
    std::vector<std::vector<std::vector<double>>> ratios;
    std::vector<std::vector<double>> adv;
    const int g_count = n_groups(rng);
    for (int g = 0; g < g_count; ++g) {
      grpo::RolloutGroup group;
      group.group_id = "g" + std::to_string(g_count - g);  // out of sorted order on purpose
      std::vector<double> rewards;
      std::vector<std::vector<double>> rs;
      const int n = n_rollouts(rng);
      for (int i = 0; i < n; ++i) {
        rewards.push_back(reward(rng));
        std::vector<double> seq(static_cast<std::size_t>(n_tokens(rng)));
        for (auto& r : seq) r = std::exp(log_ratio(rng));
        group.rollouts.push_back({seq});
        rs.push_back(seq);
      }
      group.advantages = grpo::group_advantages(rewards);
      adv.push_back(group.advantages.advantages);
      ratios.push_back(std::move(rs));
      groups.push_back(std::move(group));
    }
    for (bool per_group : {false, true}) {
      const double got = grpo::clipped_objective(
          groups, lo, hi, per_group ? grpo::TokenAggregation::GroupTokenMean : grpo::TokenAggregation::BatchTokenMean);
      worst = std::max(worst, std::abs(got - naive_objective(ratios, adv, lo, hi, per_group)));
    }
  }
  return {worst <= 1e-12, fmt("100 instances x 2 aggregations, max deviation %.2g", worst)};
}

// --- 5 ---------------------------------------------------------------------

std::vector<RolloutRecord> random_records(std::size_t n) {
  std::vector<RolloutRecord> out;
  for (std::uint64_t seed = 1; out.size() < n; ++seed) {
    for (auto& r : fixtures::generate_corpus(seed)) {
      if (out.size() < n) out.push_back(std::move(r));
    }
  }
  return out;
}

Outcome eaig_identities() {
  const auto records = random_records(50);
  // An order-1 model ignores what precedes y*, so policy and reference agree.
  std::vector<std::string> corpus;
  for (const auto& r : records) corpus.push_back(r.context + r.reasoning + r.ground_truth_method);
  const auto unigram = fit_char_ngram(corpus, 1, 1.0);
  int nonzero = 0;
  for (const auto& r : records) nonzero += eaig::evaluate(r, unigram, unigram, 0.25).delta_ig != 0.0;

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> h(0.0, 4.0), g(-3.0, 3.0), kick(-50.0, 50.0);
  int bad_count = 0, changed = 0;
  for (std::size_t t = 1; t <= 64; ++t) {
    EntropySequence e{std::vector<std::string>(t, "x"), {}};
    for (std::size_t i = 0; i < t; ++i) e.entropies.push_back(i % 5 == 0 ? 1.0 : h(rng));  // some ties
    const auto mask = eaig::entropy_mask(e, 0.25);
    std::size_t on = 0;
    for (bool f : mask.flags) on += f;
    const auto expected = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.25 * t)));
    bad_count += on != expected || mask.selected_count != expected;

    eaig::GainSequence gains;
    for (std::size_t i = 0; i < t; ++i) gains.gains.push_back(g(rng));
    const double before = eaig::information_gain(gains, mask);
    for (std::size_t i = 0; i < t; ++i) {
      if (!mask.flags[i]) gains.gains[i] += kick(rng);
    }
    changed += eaig::information_gain(gains, mask) != before;
  }
  return {nonzero == 0 && bad_count == 0 && changed == 0,
          fmt("identical providers: %d/50 nonzero; cardinality: %d/64 wrong; perturbation: %d/64 changed", nonzero,
              bad_count, changed)};
}

// --- 6 ---------------------------------------------------------------------

Outcome csg_identities() {
  const HashedTrigramEmbedder embedder;
  const RewardConfig c;
  double worst_copy = 0.0, worst_match = 0.0, worst_scale = 0.0;
  for (auto r : random_records(40)) {
    for (auto mode : {csg::SectionMode::Full, csg::SectionMode::Overview}) {
      r.generated_method = r.input();
      worst_copy = std::max(worst_copy, std::abs(csg::contrastive_semantic_gain(r, embedder, mode,
                                                                                 c.forbidden_header_patterns)
                                                     .delta_sem));
      r.generated_method = r.ground_truth_method;
      worst_match = std::max(
          worst_match,
          std::abs(csg::contrastive_semantic_gain(r, embedder, mode, c.forbidden_header_patterns).s_gen - 1.0));
    }
  }
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> v(-1.0, 1.0), k(1e-3, 1e3);
  for (int i = 0; i < 200; ++i) {
    EmbeddingVector a, b;
    for (int d = 0; d < 64; ++d) {
      a.values.push_back(v(rng));
      b.values.push_back(v(rng));
    }
    EmbeddingVector a2 = a, b2 = b;
    const double ka = k(rng), kb = k(rng);
    for (auto& x : a2.values) x *= ka;
    for (auto& x : b2.values) x *= kb;
    worst_scale =
        std::max(worst_scale, std::abs(csg::cosine_similarity(a2, b2) - csg::cosine_similarity(a, b)));
  }
  return {worst_copy < 1e-9 && worst_match <= 1e-9 && worst_scale <= 1e-9,
          fmt("copy |delta_sem| %.2g, match |s_gen-1| %.2g, scale drift %.2g", worst_copy, worst_match,
              worst_scale)};
}

// --- 7 ---------------------------------------------------------------------

Outcome anchoring_gradient() {
  double worst_below = 0.0, worst_above = 0.0;
  int checked = 0;
  for (std::int64_t anchor : {1, 7, 250, 1000, 1600, 4096}) {
    for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
      for (std::int64_t len = 0; len < 2 * anchor + 2; ++len) {
        const double diff = shaping::length_anchor(len + 1, anchor, lambda) - shaping::length_anchor(len, anchor, lambda);
        if (len + 1 <= anchor) worst_below = std::max(worst_below, std::abs(diff - lambda / static_cast<double>(anchor)));
        else worst_above = std::max(worst_above, std::abs(diff));
        ++checked;
      }
    }
  }
  return {worst_below <= 1e-12 && worst_above <= 1e-12,
          fmt("%d unit steps, below-anchor error %.2g, above-anchor error %.2g", checked, worst_below, worst_above)};
}

// --- 8 ---------------------------------------------------------------------

Outcome dynamics_reproduction() {
  RewardConfig config;
  config.anchor_length = 1000;
  config.anchor_strength = 0.5;
  const std::vector<dynamics::StrategyProfile> pair = {{"long", 0.6, 0.3, 2000}, {"short", 0.5, 0.05, 250}};
  int short_off = 0, long_on = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    dynamics::SimulationParams p;
    p.steps = 1000;
    p.group_size = 16;
    p.seed = seed;
    p.anchoring = false;
    short_off += dynamics::simulate_grpo_selection(pair, p, config).winner_name == "short";
    p.anchoring = true;
    long_on += dynamics::simulate_grpo_selection(pair, p, config).winner_name == "long";
  }

  // Ladder: more weight on the high-variance gain term, shorter final length.
  const double weights[] = {0.0, 0.3, 0.5, 1.0};
  int ordered = 0;
  double mean_length[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    double length[4];
    for (int k = 0; k < 4; ++k) {
      dynamics::SimulationParams p;
      p.seed = seed;
      const auto ladder = dynamics::length_ladder(weights[k], 1000);
      length[k] = dynamics::simulate_grpo_selection(ladder, p, config).final_expected_length;
      mean_length[k] += length[k] / 100.0;
    }
    ordered += length[0] > length[1] && length[1] > length[2] && length[2] > length[3];
  }
  return {short_off >= 95 && long_on >= 95 && ordered >= 90,
          fmt("short wins unanchored %d/100, long wins anchored %d/100, ladder ordered %d/100 "
              "(mean length %.0f > %.0f > %.0f > %.0f for gain weight 0, 0.3, 0.5, 1)",
              short_off, long_on, ordered, mean_length[0], mean_length[1], mean_length[2], mean_length[3])};
}

// --- 9 ---------------------------------------------------------------------

Outcome format_gate() {
  const RewardConfig c;
  std::string leak(1500, 'a');
  leak.replace(700, 10, "\n## Method");
  struct Case {
    std::string reasoning;
    bool valid;
    std::vector<InvalidReason> reasons;
  };
  const std::vector<Case> cases = {
      {"", false, {InvalidReason::Empty}},
      {std::string(999, 'a'), false, {InvalidReason::TooShort}},
      {leak, false, {InvalidReason::HeaderLeak}},
      {std::string(1500, 'a'), true, {}},
  };
  int right = 0;
  for (const auto& k : cases) {
    const auto v = shaping::format_valid(k.reasoning, c);
    right += v.valid == k.valid && v.reasons == k.reasons;
  }
  int invalid = 0, nonzero = 0;
  for (const auto& g : fixtures::load_golden(kFixtures / "golden.jsonl")) {
    if (g.valid) continue;
    ++invalid;
    nonzero += g.r_total != 0.0;
  }
  return {right == 4 && invalid > 0 && nonzero == 0,
          fmt("%d/4 validity cases, %d invalid golden records, %d with nonzero reward", right, invalid, nonzero)};
}

// --- 10 --------------------------------------------------------------------

Outcome scope_statement() {
  return {true,
          "not reproducible here: headline judge scores, ablation scores and RL training curves; they need "
          "reinforcement learning on a multi-billion-parameter policy and language-model judges. Criteria 1-9 stand in for them with exact formulas, "
          "oracle equivalence and seeded qualitative dynamics"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "shaping table", 1.0, shaping_table},
      {2, "golden determinism", 5.0, golden_determinism},
      {3, "advantage properties", 5.0, advantage_properties},
      {4, "clipped objective oracle", 2.0, clipped_oracle},
      {5, "information gain identities", 5.0, eaig_identities},
      {6, "semantic gain identities", 2.0, csg_identities},
      {7, "anchoring gradient", 1.0, anchoring_gradient},
      {8, "selection dynamics", 30.0, dynamics_reproduction},
      {9, "format gate", 1.0, format_gate},
      {10, "scope", 1.0, scope_statement},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("%s %2d %-28s %8.3f s (limit %g s)%s  %s\n", ok ? "PASS" : "FAIL", c.number, c.title, seconds,
                c.limit_seconds, in_time ? "" : " TOO SLOW", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
