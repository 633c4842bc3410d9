#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ideascore/csg.hpp"
#include "ideascore/report.hpp"

namespace ideascore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRecordErrors = 1;
inline constexpr int kExitFatal = 2;

enum class Subcommand { Score, Mask, Advantage, CheckFormat, Simulate, AnchorCalibrate };

struct Invocation {
  Subcommand subcommand = Subcommand::Score;
  std::optional<std::filesystem::path> input;   // stdin when absent
  std::optional<std::filesystem::path> output;  // stdout when absent
  std::optional<std::filesystem::path> config;  // defaults when absent
  // "builtin" or an http(s) URL.
  std::string provider = "builtin";
  std::optional<std::uint64_t> seed;
  csg::SectionMode section_mode = csg::SectionMode::Overview;
  LengthUnit length_unit = LengthUnit::Tokens;
  bool anchoring = true;
  bool golden = false;

  // Built-in reference model. Fit on --lm-corpus, or on the input file.
  std::optional<std::filesystem::path> lm_corpus;
  int ngram_order = 3;
  double smoothing = 1.0;

  // simulate
  int steps = 1000;
  double learning_rate = 0.1;
  double risk_aversion = 0.5;

  // Records scored concurrently; output order always follows input order.
  int jobs = 1;
};

// Parses argv (CLI11). On --help or a usage error, writes the message and
// returns the exit code to use instead of an Invocation.
struct ParseResult {
  std::optional<Invocation> invocation;
  int exit_code = kExitOk;
};
ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs a subcommand. Input comes from `invocation.input` when set, else `in`;
// output likewise. Record-level failures go to `err` and yield exit 1;
// configuration or provider failures abort with exit 2.
int run(const Invocation& invocation, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ideascore::cli
