#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ideascore {

/// Per-token conditional log-probabilities (nats, each <= 0) of a
/// teacher-forced target.
struct LogProbSequence {
  std::vector<std::string> tokens;
  std::vector<double> logprobs;

  std::size_t size() const noexcept { return logprobs.size(); }
};

/// Per-token Shannon entropy (nats) of the next-token distribution.
struct EntropySequence {
  std::vector<std::string> tokens;
  std::vector<double> entropies;

  std::size_t size() const noexcept { return entropies.size(); }
};

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
};

// Scales `v` to unit L2 norm. Throws Error{ZeroVector} or Error{NonfiniteInput}.
void l2_normalize(EmbeddingVector& v);

/// Source of teacher-forced token statistics. The text the model sees is
/// `conditioning` immediately followed by `target`; statistics are reported
/// for target positions only.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual LogProbSequence token_logprobs(std::string_view conditioning, std::string_view target) const = 0;
  virtual EntropySequence token_entropy(std::string_view conditioning, std::string_view target) const = 0;

  // Token count of `text` under the model's tokenizer, if one is available locally.
  virtual std::optional<std::size_t> count_tokens(std::string_view /*text*/) const { return std::nullopt; }
};

class Embedder {
 public:
  virtual ~Embedder() = default;

  // Unit-norm embedding of non-empty text. Throws Error{EmptyText}.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Character-level n-gram language model with add-k smoothing.
///
/// Histories are the previous (order - 1) code points; positions before the
/// start of the text are filled with a begin-of-text symbol that is never
/// predicted. The predicted alphabet is every distinct corpus code point
/// plus one out-of-alphabet sentinel, to which any unseen code point maps.
///
///   P(c | h) = (count(h, c) + k) / (count(h, .) + k * |alphabet|)
///
/// With k = 0 an unseen history falls back to the uniform distribution (the
/// k -> 0 limit of the formula); an unseen event under a seen history has
/// probability 0 and its log-probability is reported as NONFINITE_LOGPROB.
class CharNGramModel final : public LanguageModel {
 public:
  using Symbol = std::uint32_t;

  // Tokens are single code points.
  LogProbSequence token_logprobs(std::string_view conditioning, std::string_view target) const override;
  EntropySequence token_entropy(std::string_view conditioning, std::string_view target) const override;
  std::optional<std::size_t> count_tokens(std::string_view text) const override;

  int order() const noexcept { return order_; }
  double smoothing() const noexcept { return smoothing_; }
  // Distinct corpus code points, sorted; the sentinel is not included.
  const std::vector<char32_t>& alphabet() const noexcept { return alphabet_; }
  // |alphabet| + 1 (the sentinel).
  std::size_t vocabulary_size() const noexcept { return alphabet_.size() + 1; }

  // Symbol id of a code point: its alphabet index, or the sentinel id.
  Symbol symbol_of(char32_t cp) const;
  Symbol sentinel() const noexcept { return static_cast<Symbol>(alphabet_.size()); }

  // Full next-symbol distribution after `preceding` (logical text so far),
  // indexed by symbol id.
  std::vector<double> next_distribution(std::u32string_view preceding) const;
  double probability(std::u32string_view preceding, char32_t next) const;

 private:
  friend class CharNGramBuilder;

  struct Counts {
    std::vector<std::uint64_t> by_symbol;
    std::uint64_t total = 0;
  };

  std::u32string history_key(std::u32string_view preceding) const;
  std::vector<double> distribution_for(const std::u32string& key) const;

  int order_ = 3;
  double smoothing_ = 1.0;
  std::vector<char32_t> alphabet_;
  std::map<std::u32string, Counts> counts_;
};

/// Streaming construction of a CharNGramModel, one text at a time.
class CharNGramBuilder {
 public:
  // Throws Error{InvalidConfig} when order < 1 or smoothing < 0.
  CharNGramBuilder(int order, double smoothing);

  void add(std::string_view text);
  std::size_t texts() const noexcept { return texts_.size(); }

  // Throws Error{EmptyCorpus} when nothing (or only empty text) was added.
  CharNGramModel build() const;

 private:
  int order_;
  double smoothing_;
  std::vector<std::u32string> texts_;
};

// Built-in defaults are order 3, k = 1.
CharNGramModel fit_char_ngram(std::span<const std::string> corpus, int order = 3, double smoothing = 1.0);

/// Counts of code-point 3-grams hashed with 64-bit FNV-1a into 256 buckets,
/// L2-normalised. A text shorter than three code points is a single gram.
class HashedTrigramEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDim = 256;

  EmbeddingVector embed(std::string_view text) const override;

  // Raw (unnormalised) bucket counts.
  static std::vector<double> bucket_counts(std::string_view text);
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// HTTP/JSON client for a remote provider exposing
///   POST /v1/logprobs, POST /v1/entropy, POST /v1/embed.
/// Each call opens its own connection, so concurrent calls are independent.
class RemoteProvider final : public LanguageModel, public Embedder {
 public:
  // `base_url` like "http://host:port". Throws Error{ProviderUnavailable}
  // when the URL cannot be parsed.
  explicit RemoteProvider(std::string base_url, double timeout_seconds = 30.0);

  LogProbSequence token_logprobs(std::string_view conditioning, std::string_view target) const override;
  EntropySequence token_entropy(std::string_view conditioning, std::string_view target) const override;
  EmbeddingVector embed(std::string_view text) const override;

  const std::string& base_url() const noexcept { return base_url_; }

 private:
  std::string post(const std::string& path, const std::string& body) const;

  std::string base_url_;
  double timeout_seconds_;
};

}  // namespace ideascore
