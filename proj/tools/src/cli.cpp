#include "ideascore/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ideascore/config.hpp"
#include "ideascore/dynamics.hpp"
#include "ideascore/eaig.hpp"
#include "ideascore/error.hpp"
#include "ideascore/grpo.hpp"
#include "ideascore/providers.hpp"
#include "ideascore/record.hpp"
#include "ideascore/scoring.hpp"
#include "ideascore/shaping.hpp"
#include "ideascore/text.hpp"

namespace ideascore::cli {
namespace {

using nlohmann::json;

// Aborts the run with exit 2.
struct Fatal {
  std::string message;
};

NumberFormat number_format(const Invocation& inv) { return inv.golden ? NumberFormat::Full : NumberFormat::Rounded; }

void round_numbers(json& j, NumberFormat format) {
  if (j.is_number_float()) {
    j = format_number(j.get<double>(), format);
  } else if (j.is_array() || j.is_object()) {
    for (auto& v : j) round_numbers(v, format);
  }
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

bool is_fatal(ErrorCode code) { return code == ErrorCode::ProviderUnavailable || code == ErrorCode::InvalidConfig; }

// --- I/O -------------------------------------------------------------------

struct Streams {
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ifstream in_file;
  std::ofstream out_file;
};

void open_streams(const Invocation& inv, std::istream& in, std::ostream& out, Streams& s) {
  s.in = &in;
  s.out = &out;
  if (inv.input) {
    s.in_file.open(*inv.input, std::ios::binary);
    if (!s.in_file) throw Fatal{"cannot read input " + inv.input->string()};
    s.in = &s.in_file;
  }
  if (inv.output) {
    s.out_file.open(*inv.output, std::ios::binary | std::ios::trunc);
    if (!s.out_file) throw Fatal{"cannot write output " + inv.output->string()};
    s.out = &s.out_file;
  }
}

RewardConfig load(const Invocation& inv) {
  try {
    return inv.config ? load_config(*inv.config) : validate_config(json::object());
  } catch (const Error& e) {
    throw Fatal{e.what()};
  }
}

// With anchoring off, alpha is pinned to 1.
RewardConfig apply_anchoring(RewardConfig config, bool anchoring) {
  if (!anchoring) {
    config.anchor_strength = 0.0;
    if (!config.anchor_length) config.anchor_length = 1;
  }
  return config;
}

struct Line {
  std::size_t number = 0;  // 1-based physical line
  std::string text;
};

// Next non-blank line; false at end of input.
bool next_line(std::istream& in, std::size_t& number, Line& line) {
  std::string text;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text::is_blank(text)) continue;
    line.number = number;
    line.text = std::move(text);
    return true;
  }
  return false;
}

std::string id_of(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.is_object()) {
      if (auto it = j.find("id"); it != j.end() && it->is_string()) return it->get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return {};
}

struct Outcome {
  std::string output;  // one JSONL line, without newline
  std::string diagnostic;
  bool failed = false;
};

Outcome record_failure(const Line& line, const std::string& id, const Error& e) {
  json placeholder = {{"line", line.number}, {"id", id.empty() ? json(nullptr) : json(id)},
                      {"error", std::string(to_string(e.code()))}};
  Outcome o;
  o.output = dump(placeholder);
  o.diagnostic = "line " + std::to_string(line.number) + (id.empty() ? "" : " (" + id + ")") + ": " + e.what();
  o.failed = true;
  return o;
}

// Applies `fn` to every record line, `jobs` at a time, writing outputs in input
// order. Returns the number of failed lines.
template <typename Fn>
std::size_t process_lines(std::istream& in, std::ostream& out, std::ostream& err, int jobs, Fn fn) {
  auto run_one = [&fn](const Line& line) -> Outcome {
    try {
      return Outcome{fn(line.text), {}, false};
    } catch (const Error& e) {
      if (is_fatal(e.code())) throw;
      return record_failure(line, id_of(line.text), e);
    }
  };

  std::size_t failures = 0;
  std::size_t number = 0;
  const std::size_t batch = jobs > 1 ? static_cast<std::size_t>(jobs) * 16 : 1;
  std::vector<Line> lines;
  for (;;) {
    lines.clear();
    Line line;
    while (lines.size() < batch && next_line(in, number, line)) lines.push_back(std::move(line));
    if (lines.empty()) break;

    std::vector<Outcome> outcomes(lines.size());
    if (jobs > 1 && lines.size() > 1) {
      std::vector<std::future<Outcome>> futures;
      futures.reserve(lines.size());
      for (const auto& l : lines) futures.push_back(std::async(std::launch::async, run_one, std::cref(l)));
      // Results before a fatal error are still written, in order.
      std::exception_ptr fatal;
      for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
          outcomes[i] = futures[i].get();
        } catch (...) {
          if (!fatal) fatal = std::current_exception();
          outcomes.resize(i);
          for (std::size_t k = i + 1; k < futures.size(); ++k) futures[k].wait();
          break;
        }
      }
      for (const auto& o : outcomes) {
        out << o.output << '\n';
        if (o.failed) {
          err << o.diagnostic << '\n';
          ++failures;
        }
      }
      if (fatal) std::rethrow_exception(fatal);
    } else {
      for (const auto& l : lines) {
        Outcome o = run_one(l);
        out << o.output << '\n';
        if (o.failed) {
          err << o.diagnostic << '\n';
          ++failures;
        }
      }
    }
  }
  out.flush();
  return failures;
}

// --- providers -------------------------------------------------------------

// Adds one corpus line to the builder: a JSON object contributes its context,
// motivation, reasoning and ground_truth_method strings; anything else is
// taken as plain text.
void add_corpus_line(CharNGramBuilder& builder, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    builder.add(text);
    return;
  }
  if (!j.is_object()) {
    builder.add(text);
    return;
  }
  for (const char* key : {"context", "motivation", "reasoning", "ground_truth_method"}) {
    if (auto it = j.find(key); it != j.end() && it->is_string() && !it->get_ref<const std::string&>().empty()) {
      builder.add(it->get_ref<const std::string&>());
    }
  }
}

struct Providers {
  std::unique_ptr<LanguageModel> model;
  std::unique_ptr<Embedder> owned_embedder;
  const Embedder* embedder = nullptr;
};

Providers make_providers(const Invocation& inv) {
  Providers p;
  if (inv.provider != "builtin") {
    try {
      auto remote = std::make_unique<RemoteProvider>(inv.provider);
      p.embedder = remote.get();
      p.model = std::move(remote);
    } catch (const Error& e) {
      throw Fatal{e.what()};
    }
    return p;
  }

  std::optional<std::filesystem::path> corpus = inv.lm_corpus ? inv.lm_corpus : inv.input;
  if (!corpus) {
    throw Fatal{"the builtin provider is fit on --lm-corpus or on the --input file; neither was given"};
  }
  std::ifstream file(*corpus, std::ios::binary);
  if (!file) throw Fatal{"cannot read model corpus " + corpus->string()};
  try {
    CharNGramBuilder builder(inv.ngram_order, inv.smoothing);
    std::string text;
    while (std::getline(file, text)) {
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (!text.empty()) add_corpus_line(builder, text);
    }
    p.model = std::make_unique<CharNGramModel>(builder.build());
  } catch (const Error& e) {
    throw Fatal{e.what()};
  }
  p.owned_embedder = std::make_unique<HashedTrigramEmbedder>();
  p.embedder = p.owned_embedder.get();
  return p;
}

ScoringOptions scoring_options(const Invocation& inv) { return ScoringOptions{inv.section_mode, inv.length_unit}; }

// --- subcommands -----------------------------------------------------------

int finish(std::size_t failures) { return failures ? kExitRecordErrors : kExitOk; }

int cmd_score(const Invocation& inv, Streams& s, std::ostream& err) {
  const RewardConfig config = apply_anchoring(load(inv), inv.anchoring);
  if (!config.anchor_length) {
    throw Fatal{"anchor_length is not set in the config; run anchor-calibrate or pass --anchoring off"};
  }
  const Providers p = make_providers(inv);
  const ScoringContext ctx{*p.model, *p.model, *p.embedder, config, scoring_options(inv)};
  const NumberFormat format = number_format(inv);
  return finish(process_lines(*s.in, *s.out, err, inv.jobs, [&](const std::string& text) {
    return dump(to_json(score_record(parse_rollout_record(text), ctx), format));
  }));
}

int cmd_mask(const Invocation& inv, Streams& s, std::ostream& err) {
  const RewardConfig config = load(inv);
  const Providers p = make_providers(inv);
  const NumberFormat format = number_format(inv);
  return finish(process_lines(*s.in, *s.out, err, inv.jobs, [&](const std::string& text) {
    const RolloutRecord r = parse_rollout_record(text);
    const auto entropies = p.model->token_entropy(eaig::reference_conditioning(r), r.ground_truth_method);
    const auto mask = eaig::entropy_mask(entropies, config.entropy_quantile);
    json j = {{"id", r.id}};
    j["tokens"] = entropies.tokens.empty() ? json(nullptr) : json(entropies.tokens);
    j["entropies"] = entropies.entropies;
    j["mask"] = mask.flags;
    j["selected_count"] = mask.selected_count;
    round_numbers(j, format);
    return dump(j);
  }));
}

int cmd_check_format(const Invocation& inv, Streams& s, std::ostream& err) {
  const RewardConfig config = load(inv);
  // Only id and reasoning are needed here.
  return finish(process_lines(*s.in, *s.out, err, inv.jobs, [&](const std::string& text) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedLine, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::MalformedLine, "expected a JSON object");
    auto id = j.find("id");
    if (id == j.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
      throw Error(ErrorCode::MissingField, "id");
    }
    auto reasoning = j.find("reasoning");
    if (reasoning == j.end() || !reasoning->is_string()) throw Error(ErrorCode::MissingField, "reasoning");
    const shaping::FormatVerdict v = shaping::format_valid(reasoning->get_ref<const std::string&>(), config);
    json reasons = json::array();
    for (auto r : v.reasons) reasons.push_back(std::string(to_string(r)));
    return dump(json{{"id", *id}, {"valid", v.valid}, {"reasons", reasons}});
  }));
}

int cmd_advantage(const Invocation& inv, Streams& s, std::ostream& err) {
  struct Member {
    std::string id;
    double reward = 0.0;
  };
  std::map<std::string, std::vector<Member>> groups;
  std::vector<Line> full_records;  // lines that need scoring
  std::size_t failures = 0;
  std::size_t number = 0;
  Line line;

  auto fail = [&](const Line& l, const std::string& id, const Error& e) {
    const Outcome o = record_failure(l, id, e);
    *s.out << o.output << '\n';
    err << o.diagnostic << '\n';
    ++failures;
  };

  while (next_line(*s.in, number, line)) {
    json j;
    try {
      try {
        j = json::parse(line.text);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedLine, e.what());
      }
      if (!j.is_object()) throw Error(ErrorCode::MalformedLine, "expected a JSON object");
      auto gid = j.find("group_id");
      if (gid == j.end() || !gid->is_string()) throw Error(ErrorCode::MissingField, "group_id");
      auto reward = j.find("reward");
      if (reward == j.end()) reward = j.find("r_total");
      if (reward != j.end()) {
        if (!reward->is_number() || !std::isfinite(reward->get<double>())) {
          throw Error(ErrorCode::NonfiniteInput, "reward must be a finite number");
        }
        groups[gid->get<std::string>()].push_back({id_of(line.text), reward->get<double>()});
      } else {
        full_records.push_back(line);
      }
    } catch (const Error& e) {
      fail(line, id_of(line.text), e);
    }
  }

  if (!full_records.empty()) {
    const RewardConfig config = apply_anchoring(load(inv), inv.anchoring);
    if (!config.anchor_length) throw Fatal{"anchor_length is not set in the config (needed to score records)"};
    const Providers p = make_providers(inv);
    const ScoringContext ctx{*p.model, *p.model, *p.embedder, config, scoring_options(inv)};
    for (const auto& l : full_records) {
      try {
        const RolloutRecord r = parse_rollout_record(l.text);
        const ScoreReport report = score_record(r, ctx);
        groups[*r.group_id].push_back({r.id, report.r_total});
      } catch (const Error& e) {
        if (is_fatal(e.code())) throw;
        fail(l, id_of(l.text), e);
      }
    }
  }

  const NumberFormat format = number_format(inv);
  for (const auto& [gid, members] : groups) {
    std::vector<double> rewards;
    json ids = json::array();
    for (const auto& m : members) {
      rewards.push_back(m.reward);
      ids.push_back(m.id);
    }
    try {
      const grpo::AdvantageSet a = grpo::group_advantages(rewards);
      json j = {{"group_id", gid},    {"ids", ids},       {"rewards", rewards},
                {"advantages", a.advantages}, {"mean", a.mean}, {"std", a.std}};
      round_numbers(j, format);
      *s.out << dump(j) << '\n';
    } catch (const Error& e) {
      *s.out << dump(json{{"group_id", gid}, {"ids", ids}, {"error", std::string(to_string(e.code()))}}) << '\n';
      err << "group " << gid << ": " << e.what() << '\n';
      ++failures;
    }
  }
  s.out->flush();
  return finish(failures);
}

int cmd_simulate(const Invocation& inv, Streams& s, std::ostream& err) {
  const RewardConfig config = load(inv);
  std::vector<dynamics::StrategyProfile> strategies;
  std::size_t number = 0;
  Line line;
  while (next_line(*s.in, number, line)) {
    try {
      strategies.push_back(dynamics::strategy_from_json(json::parse(line.text)));
    } catch (const std::exception& e) {
      throw Fatal{"line " + std::to_string(line.number) + ": " + e.what()};
    }
  }
  dynamics::SimulationParams params;
  params.steps = inv.steps;
  params.group_size = config.group_size;
  params.anchoring = inv.anchoring;
  params.learning_rate = inv.learning_rate;
  params.risk_aversion = inv.risk_aversion;
  params.seed = inv.seed.value_or(0);
  dynamics::SimulationTrace trace;
  try {
    trace = dynamics::simulate_grpo_selection(strategies, params, config);
  } catch (const Error& e) {
    throw Fatal{e.what()};
  }
  const NumberFormat format = number_format(inv);
  for (const auto& step : trace.steps) {
    json j = dynamics::step_to_json(step);
    round_numbers(j, format);
    *s.out << dump(j) << '\n';
  }
  json summary = dynamics::summary_to_json(trace, strategies);
  round_numbers(summary, format);
  *s.out << dump(summary) << '\n';
  s.out->flush();
  (void)err;
  return kExitOk;
}

int cmd_anchor_calibrate(const Invocation& inv, Streams& s, std::ostream& err) {
  // The builtin tokenizer counts code points, so no model needs fitting.
  LengthUnit unit = inv.length_unit;
  if (inv.provider != "builtin") unit = LengthUnit::Chars;
  std::vector<std::int64_t> lengths;
  std::size_t failures = 0;
  std::size_t number = 0;
  Line line;
  while (next_line(*s.in, number, line)) {
    try {
      const RolloutRecord r = parse_rollout_record(line.text);
      lengths.push_back(static_cast<std::int64_t>(text::count_code_points(r.reasoning)));
    } catch (const Error& e) {
      err << "line " << line.number << ": " << e.what() << '\n';
      ++failures;
    }
  }
  try {
    const std::int64_t anchor = calibrate_anchor(lengths);
    *s.out << dump(json{{"anchor_length", anchor}, {"records", lengths.size()}, {"unit", to_string(unit)}}) << '\n';
  } catch (const Error& e) {
    throw Fatal{e.what()};
  }
  s.out->flush();
  return finish(failures);
}

}  // namespace

int run(const Invocation& invocation, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (invocation.jobs < 1) throw Fatal{"--jobs must be at least 1"};
    Streams s;
    open_streams(invocation, in, out, s);
    switch (invocation.subcommand) {
      case Subcommand::Score: return cmd_score(invocation, s, err);
      case Subcommand::Mask: return cmd_mask(invocation, s, err);
      case Subcommand::Advantage: return cmd_advantage(invocation, s, err);
      case Subcommand::CheckFormat: return cmd_check_format(invocation, s, err);
      case Subcommand::Simulate: return cmd_simulate(invocation, s, err);
      case Subcommand::AnchorCalibrate: return cmd_anchor_calibrate(invocation, s, err);
    }
  } catch (const Fatal& f) {
    err << "ideascore: " << f.message << '\n';
  } catch (const Error& e) {
    err << "ideascore: " << e.what() << '\n';
  }
  return kExitFatal;
}

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composite reward scoring and GRPO tools over JSONL streams"};
  app.require_subcommand(1);
  Invocation inv;
  std::string section = "overview", unit = "tokens", anchoring = "on";
  std::optional<std::string> provider;
  std::string input, output, config, lm_corpus;

  struct Entry {
    const char* name;
    Subcommand sub;
    const char* help;
  };
  const Entry entries[] = {
      {"score", Subcommand::Score, "Score rollout records"},
      {"mask", Subcommand::Mask, "Per-token entropies and the high-entropy mask"},
      {"advantage", Subcommand::Advantage, "Group-relative advantages per group_id"},
      {"check-format", Subcommand::CheckFormat, "Format validity of each reasoning trace"},
      {"simulate", Subcommand::Simulate, "Seeded GRPO strategy-selection simulation"},
      {"anchor-calibrate", Subcommand::AnchorCalibrate, "Suggest anchor_length from a corpus"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    subs.emplace_back(sub, e.sub);
    sub->add_option("--input", input, "Input JSONL (default stdin)");
    sub->add_option("--output", output, "Output JSONL (default stdout)");
    sub->add_option("--config", config, "Reward config JSON");
    sub->add_option("--provider", provider, "builtin or a provider URL (default $MORI_PROVIDER_URL, else builtin)");
    sub->add_option("--seed", inv.seed, "Simulation seed");
    sub->add_option("--section-mode", section, "full or overview")->check(CLI::IsMember({"full", "overview"}));
    sub->add_option("--length-unit", unit, "tokens or chars")->check(CLI::IsMember({"tokens", "chars"}));
    sub->add_option("--anchoring", anchoring, "on or off")->check(CLI::IsMember({"on", "off"}));
    sub->add_flag("--golden", inv.golden, "Full-precision numbers");
    sub->add_option("--lm-corpus", lm_corpus, "JSONL or text the builtin model is fit on (default: the input)");
    sub->add_option("--ngram-order", inv.ngram_order, "Builtin model order")->check(CLI::PositiveNumber);
    sub->add_option("--smoothing", inv.smoothing, "Builtin model add-k smoothing")->check(CLI::NonNegativeNumber);
    sub->add_option("--steps", inv.steps, "Simulation steps")->check(CLI::PositiveNumber);
    sub->add_option("--learning-rate", inv.learning_rate, "Simulation preference step size");
    sub->add_option("--risk-aversion", inv.risk_aversion, "Simulation risk aversion");
    sub->add_option("--jobs", inv.jobs, "Records scored concurrently")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return ParseResult{std::nullopt, code == 0 ? kExitOk : kExitFatal};
  }

  for (const auto& [sub, kind] : subs) {
    if (sub->parsed()) inv.subcommand = kind;
  }
  if (!input.empty()) inv.input = input;
  if (!output.empty()) inv.output = output;
  if (!config.empty()) inv.config = config;
  if (!lm_corpus.empty()) inv.lm_corpus = lm_corpus;
  if (provider) {
    inv.provider = *provider;
  } else if (const char* env = std::getenv("MORI_PROVIDER_URL"); env && *env) {
    inv.provider = env;
  }
  if (inv.provider.empty()) {
    err << "ideascore: --provider needs 'builtin' or a URL\n";
    return ParseResult{std::nullopt, kExitFatal};
  }
  inv.section_mode = section == "full" ? csg::SectionMode::Full : csg::SectionMode::Overview;
  inv.length_unit = unit == "chars" ? LengthUnit::Chars : LengthUnit::Tokens;
  inv.anchoring = anchoring == "on";
  return ParseResult{inv, kExitOk};
}

}  // namespace ideascore::cli
