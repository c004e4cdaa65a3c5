#include <iostream>

#include "twoball/cli.hpp"

int main(int argc, char** argv) {
  const twoball::ParseOutcome parsed = twoball::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return twoball::run(*parsed.config, std::cout, std::cerr);
}
