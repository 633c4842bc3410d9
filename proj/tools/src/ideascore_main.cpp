#include <iostream>

#include "ideascore/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const auto parsed = ideascore::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.invocation) return parsed.exit_code;
  return ideascore::cli::run(*parsed.invocation, std::cin, std::cout, std::cerr);
}
