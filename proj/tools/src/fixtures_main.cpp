#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ideascore/error.hpp"
#include "ideascore/fixtures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regenerate or check the golden fixtures"};
  app.require_subcommand(1);
  std::uint64_t seed = ideascore::fixtures::kDocumentedSeed;
  std::string dir = "fixtures";
  for (auto* sub : {app.add_subcommand("regenerate", "Write corpus, config and golden files"),
                    app.add_subcommand("check", "Fail with FIXTURE_DRIFT unless the files match a fresh render")}) {
    sub->add_option("--seed", seed, "Corpus seed");
    sub->add_option("--dir", dir, "Fixture directory");
  }
  CLI11_PARSE(app, argc, argv);
  try {
    if (app.got_subcommand("regenerate")) {
      ideascore::fixtures::write_fixtures(dir, seed);
      std::cout << "wrote fixtures to " << dir << " (seed " << seed << ")\n";
    } else {
      ideascore::fixtures::check_fixtures(dir, seed);
      std::cout << "fixtures in " << dir << " match seed " << seed << "\n";
    }
  } catch (const ideascore::Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == ideascore::ErrorCode::FixtureDrift ? 1 : 2;
  }
  return 0;
}
