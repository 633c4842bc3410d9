#include "ideascore/providers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ideascore/error.hpp"
#include "ideascore/text.hpp"

namespace ideascore {

void l2_normalize(EmbeddingVector& v) {
  double sq = 0.0;
  for (double x : v.values) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonfiniteInput, "embedding has a non-finite entry");
    sq += x * x;
  }
  if (sq == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalise a zero embedding");
  const double norm = std::sqrt(sq);
  for (double& x : v.values) x /= norm;
}

// --- CharNGramModel ---------------------------------------------------------

CharNGramModel::Symbol CharNGramModel::symbol_of(char32_t cp) const {
  const auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), cp);
  if (it == alphabet_.end() || *it != cp) return sentinel();
  return static_cast<Symbol>(it - alphabet_.begin());
}

std::u32string CharNGramModel::history_key(std::u32string_view preceding) const {
  const auto width = static_cast<std::size_t>(order_ - 1);
  const char32_t begin_of_text = sentinel() + 1;
  std::u32string key(width, begin_of_text);
  const std::size_t take = std::min(width, preceding.size());
  for (std::size_t i = 0; i < take; ++i) {
    key[width - take + i] = symbol_of(preceding[preceding.size() - take + i]);
  }
  return key;
}

std::vector<double> CharNGramModel::distribution_for(const std::u32string& key) const {
  const std::size_t v = vocabulary_size();
  std::vector<double> p(v, 1.0 / static_cast<double>(v));
  const auto it = counts_.find(key);
  if (it == counts_.end() || it->second.total == 0) {
    // Unseen history: add-k gives the uniform distribution for every k > 0,
    // and k = 0 takes the same limit.
    return p;
  }
  const double denom = static_cast<double>(it->second.total) + smoothing_ * static_cast<double>(v);
  for (std::size_t s = 0; s < v; ++s) {
    p[s] = (static_cast<double>(it->second.by_symbol[s]) + smoothing_) / denom;
  }
  return p;
}

std::vector<double> CharNGramModel::next_distribution(std::u32string_view preceding) const {
  return distribution_for(history_key(preceding));
}

double CharNGramModel::probability(std::u32string_view preceding, char32_t next) const {
  return next_distribution(preceding)[symbol_of(next)];
}

std::optional<std::size_t> CharNGramModel::count_tokens(std::string_view text) const {
  return text::count_code_points(text);
}

LogProbSequence CharNGramModel::token_logprobs(std::string_view conditioning, std::string_view target) const {
  if (target.empty()) throw Error(ErrorCode::EmptyText, "target is empty");
  LogProbSequence out;
  out.tokens = text::split_code_points(target);
  std::u32string stream = text::decode(conditioning);
  const std::size_t offset = stream.size();
  stream += text::decode(target);
  out.logprobs.reserve(stream.size() - offset);
  for (std::size_t t = offset; t < stream.size(); ++t) {
    const std::u32string_view preceding(stream.data(), t);
    const double p = probability(preceding, stream[t]);
    if (!(p > 0.0)) {
      throw Error(ErrorCode::NonfiniteLogprob,
                  "zero-probability event at target position " + std::to_string(t - offset));
    }
    out.logprobs.push_back(std::log(p));
  }
  return out;
}

EntropySequence CharNGramModel::token_entropy(std::string_view conditioning, std::string_view target) const {
  if (target.empty()) throw Error(ErrorCode::EmptyText, "target is empty");
  EntropySequence out;
  out.tokens = text::split_code_points(target);
  std::u32string stream = text::decode(conditioning);
  const std::size_t offset = stream.size();
  stream += text::decode(target);
  out.entropies.reserve(stream.size() - offset);
  for (std::size_t t = offset; t < stream.size(); ++t) {
    double h = 0.0;
    for (double p : next_distribution(std::u32string_view(stream.data(), t))) {
      if (p > 0.0) h -= p * std::log(p);
    }
    out.entropies.push_back(std::max(0.0, h));
  }
  return out;
}

// --- CharNGramBuilder -------------------------------------------------------

CharNGramBuilder::CharNGramBuilder(int order, double smoothing) : order_(order), smoothing_(smoothing) {
  if (order < 1) throw Error(ErrorCode::InvalidConfig, "n-gram order must be >= 1");
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw Error(ErrorCode::InvalidConfig, "smoothing must be a finite non-negative number");
  }
}

void CharNGramBuilder::add(std::string_view text) { texts_.push_back(text::decode(text)); }

CharNGramModel CharNGramBuilder::build() const {
  std::set<char32_t> distinct;
  for (const auto& t : texts_) distinct.insert(t.begin(), t.end());
  if (distinct.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus has no characters");

  CharNGramModel model;
  model.order_ = order_;
  model.smoothing_ = smoothing_;
  model.alphabet_.assign(distinct.begin(), distinct.end());
  const std::size_t v = model.vocabulary_size();
  for (const auto& t : texts_) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto& counts = model.counts_[model.history_key(std::u32string_view(t.data(), i))];
      if (counts.by_symbol.empty()) counts.by_symbol.assign(v, 0);
      ++counts.by_symbol[model.symbol_of(t[i])];
      ++counts.total;
    }
  }
  return model;
}

CharNGramModel fit_char_ngram(std::span<const std::string> corpus, int order, double smoothing) {
  CharNGramBuilder builder(order, smoothing);
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus is empty");
  for (const auto& text : corpus) builder.add(text);
  return builder.build();
}

// --- HashedTrigramEmbedder --------------------------------------------------

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<double> HashedTrigramEmbedder::bucket_counts(std::string_view text) {
  std::vector<double> counts(kDim, 0.0);
  const auto cps = text::split_code_points(text);
  if (cps.empty()) return counts;
  if (cps.size() < 3) {
    counts[fnv1a64(text) % kDim] += 1.0;
    return counts;
  }
  std::string gram;
  for (std::size_t i = 0; i + 3 <= cps.size(); ++i) {
    gram = cps[i] + cps[i + 1] + cps[i + 2];
    counts[fnv1a64(gram) % kDim] += 1.0;
  }
  return counts;
}

EmbeddingVector HashedTrigramEmbedder::embed(std::string_view text) const {
  if (text.empty()) throw Error(ErrorCode::EmptyText, "cannot embed empty text");
  EmbeddingVector v{bucket_counts(text)};
  l2_normalize(v);
  return v;
}

}  // namespace ideascore
