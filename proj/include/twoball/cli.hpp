#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twoball/certify.hpp"

namespace twoball {

enum class Command { Constants, Table1, Table2, Table3, Certify, MuCurve, FCurve, CompareAnnulus, PropSuite };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Constants;
  std::vector<int> dims{4, 5, 6, 7, 8, 9};
  RootOptions roots;
  CertifyOptions certify;
  int panels = 4096;
  int samples = 101;
  double r_max = 0.0;  ///< f-curve upper radius; 0 selects 0.999 j_{nu,2}
  std::vector<double> r_in{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double r_out = 1.0;
  int count = 1000;
  std::uint64_t seed = 12345;
  std::string out;  ///< empty writes to stdout
  OutputFormat format = OutputFormat::Csv;
  int digits = 17;
};

enum ExitCode : int { kExitPass = 0, kExitVerificationFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitPass;  ///< meaningful when config is empty
  std::string message;        ///< help text or error
};

ParseOutcome parse_args(int argc, const char* const* argv);

/// Executes one command. Results go to config.out (or `out`), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Accepts "4..9", "4,6,8" or a single integer.
std::vector<int> parse_dimension_list(const std::string& text);

std::string tool_version();

}  // namespace twoball
