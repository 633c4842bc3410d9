#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "ideascore/error.hpp"
#include "ideascore/fixtures.hpp"
#include "ideascore/shaping.hpp"
#include "ideascore/text.hpp"

using namespace ideascore;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(IDEASCORE_SOURCE_DIR) / "fixtures";

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::MalformedLine;
}

}  // namespace

TEST_CASE("committed fixtures match the documented seed") {
  CHECK_NOTHROW(fixtures::check_fixtures(kFixtures, fixtures::kDocumentedSeed));
}

TEST_CASE("another seed drifts") {
  CHECK(code_of([] { fixtures::check_fixtures(kFixtures, fixtures::kDocumentedSeed + 1); }) ==
        ErrorCode::FixtureDrift);
}

TEST_CASE("a tampered or missing golden file drifts") {
  const fs::path dir = fs::temp_directory_path() / ("ideascore_fixture_test_" + std::to_string(::getpid()));
  fixtures::write_fixtures(dir, fixtures::kDocumentedSeed);
  CHECK_NOTHROW(fixtures::check_fixtures(dir, fixtures::kDocumentedSeed));
  {
    std::ofstream(dir / "golden.jsonl", std::ios::app) << "{}\n";
  }
  CHECK(code_of([&] { fixtures::check_fixtures(dir, fixtures::kDocumentedSeed); }) == ErrorCode::FixtureDrift);
  fs::remove(dir / "golden.jsonl");
  CHECK(code_of([&] { fixtures::check_fixtures(dir, fixtures::kDocumentedSeed); }) == ErrorCode::FixtureDrift);
  fs::remove_all(dir);
}

TEST_CASE("corpus has the controlled record kinds") {
  const auto corpus = fixtures::generate_corpus(fixtures::kDocumentedSeed);
  REQUIRE(corpus.size() == fixtures::kCorpusSize);
  CHECK(corpus == fixtures::load_corpus(kFixtures / "corpus.jsonl"));
  CHECK(corpus[0].generated_method == corpus[0].input());
  CHECK(corpus[1].generated_method == corpus[1].ground_truth_method);

  const auto config = fixtures::fixture_config();
  std::size_t invalid = 0;
  for (const auto& r : corpus) {
    if (!shaping::format_valid(r.reasoning, config).valid) ++invalid;
  }
  CHECK(invalid == 5);

  bool multibyte = false;
  for (const auto& r : corpus) {
    multibyte = multibyte || text::count_code_points(r.context + r.reasoning) < (r.context + r.reasoning).size();
  }
  CHECK(multibyte);
}

TEST_CASE("golden reports carry the fixture identities") {
  const auto golden = fixtures::load_golden(kFixtures / "golden.jsonl");
  REQUIRE(golden.size() == fixtures::kCorpusSize);
  CHECK(golden[0].delta_sem == 0.0);                              // copy baseline
  CHECK(std::abs(golden[1].s_gen - 1.0) < 1e-9);                  // perfect match
  for (const auto& g : golden) {
    if (!g.valid) CHECK(g.r_total == 0.0);
    CHECK(g.alpha >= 0.5);
    CHECK(g.alpha <= 1.0);
  }
  std::size_t rewarded = 0;
  for (const auto& g : golden) rewarded += g.r_total > 0.0;
  CHECK(rewarded >= 5);
}

TEST_CASE("scores in memory equal the loaded golden file") {
  const auto corpus = fixtures::load_corpus(kFixtures / "corpus.jsonl");
  const auto fresh = fixtures::score_corpus(corpus, fixtures::fixture_config());
  const auto golden = fixtures::load_golden(kFixtures / "golden.jsonl");
  REQUIRE(fresh.size() == golden.size());
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    CHECK(fresh[i].id == golden[i].id);
    CHECK(fresh[i].r_total == golden[i].r_total);
    CHECK(fresh[i].delta_ig == golden[i].delta_ig);
    CHECK(fresh[i].invalid_reasons == golden[i].invalid_reasons);
  }
}
