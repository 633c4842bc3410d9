#include "ideascore/fixtures.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ideascore/error.hpp"
#include "ideascore/providers.hpp"
#include "ideascore/random.hpp"
#include "ideascore/scoring.hpp"
#include "ideascore/text.hpp"

namespace ideascore::fixtures {
namespace {

using nlohmann::json;

// Made-up research vocabulary; no real paper text.
constexpr std::array<const char*, 48> kWords = {
    "sparse",     "latent",    "graph",      "kernel",     "adaptive",   "contrastive", "retrieval", "encoder",
    "decoder",    "token",     "gradient",   "curriculum", "ensemble",   "variance",    "entropy",   "prior",
    "mixture",    "attention", "diffusion",  "manifold",   "spectral",   "calibrated",  "robust",    "temporal",
    "hierarchy",  "residual",  "memory",     "routing",    "distilled",  "bayesian",    "signal",    "noise",
    "budget",     "sampling",  "objective",  "alignment",  "protein",    "lattice",     "simulator", "sensor",
    "benchmark",  "ablation",  "schedule",   "regularizer", "embedding", "planner",     "verifier",  "résumé",
};

// Joiners. The arrow keeps a multi-byte code point in the corpus.
constexpr std::array<const char*, 6> kConnectives = {"because", "therefore", "so that", "while", "unless", "→"};

class Draws {
 public:
  Draws(std::uint64_t seed, std::uint32_t record, std::uint32_t field)
      : key_(random::key_from_seed(seed)), record_(record), field_(field) {}

  double uniform() {
    const random::Counter c{record_, field_, index_++, 0};
    return random::uniform_open01(random::philox4x32_10(c, key_));
  }
  std::size_t below(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * n)); }

 private:
  random::Key key_;
  std::uint32_t record_;
  std::uint32_t field_;
  std::uint32_t index_ = 0;
};

std::string sentence(Draws& d) {
  const std::size_t n = 6 + d.below(9);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    if (i > 2 && d.uniform() < 0.12) {
      s += kConnectives[d.below(kConnectives.size())];
      s += ' ';
    }
    s += kWords[d.below(kWords.size())];
  }
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s += '.';
  return s;
}

std::string paragraph(Draws& d, std::size_t sentences) {
  std::string p;
  for (std::size_t i = 0; i < sentences; ++i) {
    if (i) p += ' ';
    p += sentence(d);
  }
  return p;
}

// Plain text of at least `min_cp` code points, in lines of a few sentences.
std::string plain_text(Draws& d, std::size_t min_cp) {
  std::string t;
  while (text::count_code_points(t) < min_cp) {
    if (!t.empty()) t += '\n';
    t += paragraph(d, 2 + d.below(3));
  }
  return t;
}

enum Field : std::uint32_t { kContext, kMotivation, kReasoning, kGenerated, kTruth, kShape };

}  // namespace

std::vector<RolloutRecord> generate_corpus(std::uint64_t seed) {
  std::vector<RolloutRecord> corpus;
  for (std::uint32_t i = 0; i < kCorpusSize; ++i) {
    RolloutRecord r;
    char id[16];
    std::snprintf(id, sizeof id, "r%02u", i);
    r.id = id;
    r.group_id = "g" + std::to_string(i / 4);

    Draws ctx(seed, i, kContext), mot(seed, i, kMotivation), rea(seed, i, kReasoning), gen(seed, i, kGenerated),
        tru(seed, i, kTruth), shape(seed, i, kShape);
    r.context = paragraph(ctx, 3 + ctx.below(3));
    r.motivation = paragraph(mot, 1 + mot.below(2));

    const std::string method_para = paragraph(tru, 3);
    const std::string parts_para = paragraph(tru, 3);
    const std::string train_para = paragraph(tru, 2);
    r.ground_truth_method =
        "## Method\n" + method_para + "\n## Components\n" + parts_para + "\n### Training\n" + train_para;

    switch (i) {
      case 0:
        r.reasoning = plain_text(rea, 1400);
        r.generated_method = r.input();
        break;
      case 1:
        r.reasoning = plain_text(rea, 1700);
        r.generated_method = r.ground_truth_method;
        break;
      case 2:
        r.reasoning = "";
        r.generated_method = "## Method\n" + paragraph(gen, 3);
        break;
      case 3:
        r.reasoning = plain_text(rea, 400);
        r.generated_method = "## Method\n" + method_para + "\n## Components\n" + paragraph(gen, 3);
        break;
      case 4:
        r.reasoning = plain_text(rea, 700) + "\n  ## Plan\n" + plain_text(rea, 700);
        r.generated_method = "## Method\n" + paragraph(gen, 3);
        break;
      case 5:
        r.reasoning = "## Intro";
        r.generated_method = "## Method\n" + paragraph(gen, 2);
        break;
      case 6:
        r.reasoning = " \n\t\n  ";
        r.generated_method = "## Method\n" + paragraph(gen, 2);
        break;
      default: {
        // Overlap grows with the index: each overview sentence is copied from
        // the ground truth with probability p, else freshly drawn.
        const double p = static_cast<double>(i - 7) / static_cast<double>(kCorpusSize - 8);
        const std::size_t length = 1000 + shape.below(1600);
        std::string reasoning = plain_text(rea, length - std::min<std::size_t>(length, 200));
        reasoning += "\n" + method_para.substr(0, 180);
        r.reasoning = reasoning;

        std::string overview;
        Draws truth_again(seed, i, kTruth);
        for (int s = 0; s < 3; ++s) {
          const std::string truth_sentence = sentence(truth_again);
          const std::string fresh = sentence(gen);
          if (!overview.empty()) overview += ' ';
          overview += shape.uniform() < p ? truth_sentence : fresh;
        }
        r.generated_method = "## Method\n" + overview + "\n## Components\n" + paragraph(gen, 2);
        break;
      }
    }
    corpus.push_back(std::move(r));
  }
  return corpus;
}

RewardConfig fixture_config() {
  RewardConfig c;
  c.anchor_length = 1600;
  return c;
}

std::vector<ScoreReport> score_corpus(const std::vector<RolloutRecord>& corpus, const RewardConfig& config) {
  CharNGramBuilder builder(3, 1.0);
  for (const auto& r : corpus) {
    for (auto t : reference_corpus_texts(r)) {
      if (!t.empty()) builder.add(t);
    }
  }
  const CharNGramModel model = builder.build();
  const HashedTrigramEmbedder embedder;
  const ScoringContext ctx{model, model, embedder, config, ScoringOptions{}};
  std::vector<ScoreReport> reports;
  reports.reserve(corpus.size());
  for (const auto& r : corpus) reports.push_back(score_record(r, ctx));
  return reports;
}

FixtureFiles render(std::uint64_t seed) {
  const auto corpus = generate_corpus(seed);
  const auto config = fixture_config();
  FixtureFiles f;
  for (const auto& r : corpus) f.corpus += serialize(r) + "\n";
  f.config = to_json(config).dump(2) + "\n";
  for (const auto& report : score_corpus(corpus, config)) f.golden += to_json(report, NumberFormat::Full).dump() + "\n";
  return f;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FixtureDrift, "missing fixture file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path.string());
  out << contents;
}

void compare(const std::string& name, const std::string& expected, const std::string& actual) {
  if (expected == actual) return;
  std::istringstream a(expected), b(actual);
  std::string la, lb;
  std::size_t line = 0;
  for (;;) {
    ++line;
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) break;
    if (ha != hb || la != lb) break;
  }
  throw Error(ErrorCode::FixtureDrift, name + " differs from the regenerated copy at line " + std::to_string(line));
}

}  // namespace

void write_fixtures(const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  const FixtureFiles f = render(seed);
  write_file(dir / "corpus.jsonl", f.corpus);
  write_file(dir / "config.json", f.config);
  write_file(dir / "golden.jsonl", f.golden);
}

void check_fixtures(const std::filesystem::path& dir, std::uint64_t seed) {
  const FixtureFiles f = render(seed);
  compare("corpus.jsonl", f.corpus, slurp(dir / "corpus.jsonl"));
  compare("config.json", f.config, slurp(dir / "config.json"));
  compare("golden.jsonl", f.golden, slurp(dir / "golden.jsonl"));
}

std::vector<RolloutRecord> load_corpus(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::vector<RolloutRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_rollout_record(line));
  }
  return out;
}

ScoreReport report_from_json(const json& j) {
  ScoreReport r;
  r.id = j.at("id").get<std::string>();
  if (j.contains("group_id")) r.group_id = j.at("group_id").get<std::string>();
  r.delta_ig = j.at("delta_ig").get<double>();
  r.delta_sem = j.at("delta_sem").get<double>();
  r.s_gen = j.at("s_gen").get<double>();
  r.s_base = j.at("s_base").get<double>();
  r.shaped_ig = j.at("shaped_ig").get<double>();
  r.shaped_sem = j.at("shaped_sem").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.valid = j.at("valid").get<bool>();
  for (const auto& reason : j.at("invalid_reasons")) {
    const auto s = reason.get<std::string>();
    if (s == "EMPTY") r.invalid_reasons.push_back(InvalidReason::Empty);
    else if (s == "TOO_SHORT") r.invalid_reasons.push_back(InvalidReason::TooShort);
    else if (s == "HEADER_LEAK") r.invalid_reasons.push_back(InvalidReason::HeaderLeak);
    else throw Error(ErrorCode::MalformedLine, "unknown invalid reason " + s);
  }
  r.r_total = j.at("r_total").get<double>();
  r.reasoning_length = j.at("reasoning_length").get<std::int64_t>();
  r.length_unit = j.at("length_unit").get<std::string>() == "chars" ? LengthUnit::Chars : LengthUnit::Tokens;
  return r;
}

std::vector<ScoreReport> load_golden(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::vector<ScoreReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(report_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace ideascore::fixtures
