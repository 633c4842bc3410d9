#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ideascore/eaig.hpp"
#include "ideascore/error.hpp"
#include "ideascore/record.hpp"

using namespace ideascore;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ideascore::Error");
  return ErrorCode::FixtureDrift;
}

EntropySequence entropies(std::vector<double> h) { return {std::vector<std::string>(h.size(), "x"), std::move(h)}; }

LogProbSequence logprobs(std::vector<double> lp) { return {std::vector<std::string>(lp.size(), "x"), std::move(lp)}; }

std::vector<std::size_t> selected(const eaig::EntropyMask& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.flags.size(); ++i) {
    if (m.flags[i]) out.push_back(i);
  }
  return out;
}

// Oracle: sort (entropy desc, index asc) pairs explicitly and keep the first k.
std::vector<std::size_t> sort_select(const std::vector<double>& h, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> v;
  for (std::size_t i = 0; i < h.size(); ++i) v.emplace_back(-h[i], i);
  std::sort(v.begin(), v.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(v[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("entropy_mask examples") {
  const auto m = eaig::entropy_mask(entropies({0.1, 2.0, 0.5, 3.0}), 0.25);
  CHECK(m.selected_count == 1);
  CHECK(selected(m) == std::vector<std::size_t>{3});

  const auto ties = eaig::entropy_mask(entropies({1.0, 1.0, 1.0, 1.0}), 0.5);
  CHECK(ties.selected_count == 2);
  CHECK(selected(ties) == std::vector<std::size_t>{0, 1});

  const auto all = eaig::entropy_mask(entropies({0.3, 0.1, 0.2}), 1.0);
  CHECK(selected(all) == std::vector<std::size_t>{0, 1, 2});

  CHECK(code_of([] { eaig::entropy_mask(entropies({}), 0.25); }) == ErrorCode::EmptySequence);
}

TEST_CASE("property: mask cardinality and selection match the sort oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(0, 5);  // coarse values force ties
  for (std::size_t t = 1; t <= 64; ++t) {
    for (double rho : {0.1, 0.25, 0.5, 0.9, 1.0}) {
      std::vector<double> h(t);
      for (auto& x : h) x = 0.5 * level(rng);
      const auto m = eaig::entropy_mask(entropies(h), rho);
      const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rho * static_cast<double>(t))));
      CHECK(m.selected_count == k);
      CHECK(static_cast<std::size_t>(std::count(m.flags.begin(), m.flags.end(), true)) == k);
      CHECK(selected(m) == sort_select(h, k));
    }
  }
}

TEST_CASE("pointwise_gain") {
  const auto g = eaig::pointwise_gain(logprobs({-1.0, -2.0}), logprobs({-1.5, -2.0}));
  CHECK(g.gains == std::vector<double>{0.5, 0.0});
  const auto same = eaig::pointwise_gain(logprobs({-0.3, -0.7}), logprobs({-0.3, -0.7}));
  CHECK(same.gains == std::vector<double>{0.0, 0.0});
  CHECK(code_of([] { eaig::pointwise_gain(logprobs({-1, -1, -1}), logprobs({-1, -1})); }) ==
        ErrorCode::LengthMismatch);
  LogProbSequence other{{"a", "b"}, {-1.0, -1.0}};
  CHECK(code_of([&] { eaig::pointwise_gain(logprobs({-1, -1}), other); }) == ErrorCode::TokenizationMismatch);
}

TEST_CASE("information_gain examples") {
  const eaig::GainSequence g{{0.5, 0.0, 2.0}};
  CHECK(eaig::information_gain(g, {{false, false, true}, 1}) == 2.0);
  CHECK(eaig::information_gain(g, {{true, true, true}, 3}) == doctest::Approx(2.5 / 3.0).epsilon(1e-15));
  CHECK(eaig::information_gain({{0.0, 0.0, 0.0}}, {{true, false, true}, 2}) == 0.0);
  CHECK(code_of([&] { eaig::information_gain(g, {{true, false}, 1}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { eaig::information_gain(g, {{false, false, false}, 0}); }) == ErrorCode::EmptyMask);
}

TEST_CASE("property: full mask equals arithmetic mean; unselected gains do not matter") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t t = 1 + rng() % 40;
    std::vector<double> gains(t), h(t);
    for (auto& x : gains) x = n(rng);
    for (auto& x : h) x = std::abs(n(rng));
    const auto full = eaig::entropy_mask(entropies(h), 1.0);
    double mean = 0.0;
    for (double x : gains) mean += x;
    mean /= static_cast<double>(t);
    CHECK(std::abs(eaig::information_gain({gains}, full) - mean) <= 1e-12);

    const auto mask = eaig::entropy_mask(entropies(h), 0.25);
    const double base = eaig::information_gain({gains}, mask);
    auto perturbed = gains;
    for (std::size_t i = 0; i < t; ++i) {
      if (!mask.flags[i]) perturbed[i] += 100.0 * n(rng);
    }
    CHECK(eaig::information_gain({perturbed}, mask) == base);
  }
}

TEST_CASE("evaluate: identical models with context-free conditioning give zero gain") {
  const std::vector<std::string> corpus{"the method uses entropy", "reasoning improves methods"};
  const auto unigram = fit_char_ngram(corpus, 1, 1.0);
  RolloutRecord r{"id", "some context", "a motivation", "long reasoning text", "gen", "the method", std::nullopt};
  const auto b = eaig::evaluate(r, unigram, unigram, 0.25);
  CHECK(b.delta_ig == 0.0);
  CHECK(b.mask.selected_count == 3);  // ceil(0.25 * 10)
  CHECK(b.gains.gains.size() == 10);
}

TEST_CASE("evaluate: reasoning that previews y* raises its likelihood") {
  // An order-3 model sees the last reasoning character and the separator.
  const std::vector<std::string> corpus{"plan: gr\ngradient boosted tree"};
  const auto model = fit_char_ngram(corpus, 3, 0.1);
  RolloutRecord r{"id", "data", "need accuracy", "", "gen", "gradient boosted tree", std::nullopt};
  r.reasoning = "plan: gr";
  const double informative = eaig::evaluate(r, model, model, 1.0).delta_ig;
  r.reasoning = "so maybe zz";
  const double uninformative = eaig::evaluate(r, model, model, 1.0).delta_ig;
  CHECK(informative > 0.0);
  CHECK(uninformative == 0.0);
  CHECK(eaig::policy_conditioning(r) == "data\nneed accuracy\nso maybe zz\n");
  CHECK(eaig::reference_conditioning(r) == "data\nneed accuracy\n");
}
