#include "twoball/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "twoball/errors.hpp"
#include "twoball/kernels.hpp"
#include "twoball/report.hpp"
#include "twoball/two_ball.hpp"

#ifndef TWOBALL_VERSION
#define TWOBALL_VERSION "0.0.0"
#endif

namespace twoball {

std::string tool_version() { return TWOBALL_VERSION; }

std::vector<int> parse_dimension_list(const std::string& text) {
  std::vector<int> dims;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad dimension '" + s + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty dimension range " + text);
    for (int d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) dims.push_back(to_int(item));
  if (dims.empty()) throw std::invalid_argument("no dimensions given");
  return dims;
}

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  std::string dims_text = "4..9";
  int dim = 4;
  std::string format = "csv";

  CLI::App app{"Certifies the asymmetric two-ball inequalities and checks the rearrangement identities."};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (stdout when omitted)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--digits", cfg.digits, "Significant digits in the output")->check(CLI::Range(1, 17));
  };
  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("--dims", dims_text, "Dimensions as a range 4..9 or a list 4,5,6");
  };
  auto add_roots = [&](CLI::App* sub) {
    sub->add_option("--abs-tol", cfg.roots.abs_tol, "Bisection tolerance of root enclosures")
        ->check(CLI::PositiveNumber);
  };

  std::map<CLI::App*, Command> commands;
  auto sub = [&](const char* name, const char* help, Command c) {
    CLI::App* s = app.add_subcommand(name, help);
    commands[s] = c;
    add_common(s);
    return s;
  };

  CLI::App* constants = sub("constants", "Enclosures of j1, j2, k, a_I, a_S", Command::Constants);
  add_dims(constants);
  add_roots(constants);
  CLI::App* table1 = sub("table1", "Necessary-condition values 2(j/k)^d + j/k", Command::Table1);
  add_dims(table1);
  add_roots(table1);
  CLI::App* table2 = sub("table2", "Directed constants at display precision", Command::Table2);
  add_dims(table2);
  add_roots(table2);
  CLI::App* table3 = sub("table3", "Margins of the directed inequalities", Command::Table3);
  add_dims(table3);
  add_roots(table3);
  CLI::App* certify = sub("certify", "Greedy zigzag certificates", Command::Certify);
  add_dims(certify);
  add_roots(certify);
  certify->add_option("--max-len", cfg.certify.max_len, "Longest sequence per side");
  certify->add_option("--margin-guard", cfg.certify.margin_guard, "Required slack")->check(CLI::PositiveNumber);
  CLI::App* mu_curve_cmd = sub("mu-curve", "mu(a, b(a)) on a uniform grid", Command::MuCurve);
  mu_curve_cmd->add_option("--dim", dim, "Dimension");
  mu_curve_cmd->add_option("--samples", cfg.samples, "Grid points");
  add_roots(mu_curve_cmd);
  CLI::App* f_curve_cmd = sub("f-curve", "f_nu on a uniform radius grid", Command::FCurve);
  f_curve_cmd->add_option("--dim", dim, "Dimension");
  f_curve_cmd->add_option("--samples", cfg.samples, "Grid points");
  f_curve_cmd->add_option("--r-max", cfg.r_max, "Largest radius")->check(CLI::PositiveNumber);
  CLI::App* compare = sub("compare-annulus", "Improved comparison on annuli", Command::CompareAnnulus);
  add_dims(compare);
  compare->add_option("--r-in", cfg.r_in, "Inner radii");
  compare->add_option("--r-out", cfg.r_out, "Outer radius")->check(CLI::PositiveNumber);
  compare->add_option("--panels", cfg.panels, "Simpson panels");
  compare->add_option("--samples", cfg.samples, "Comparison radii");
  CLI::App* props = sub("prop-suite", "Random step-function identities", Command::PropSuite);
  props->add_option("--count", cfg.count, "Number of random functions");
  props->add_option("--seed", cfg.seed, "Corpus seed");

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    outcome.exit_code = kExitPass;
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::CallForVersion& e) {
    outcome.exit_code = kExitPass;
    outcome.message = tool_version() + "\n";
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = e.what();
    return outcome;
  }

  try {
    for (const auto& [s, c] : commands) {
      if (s->parsed()) cfg.command = c;
    }
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    const bool single = cfg.command == Command::MuCurve || cfg.command == Command::FCurve;
    cfg.dims = single ? std::vector<int>{dim} : parse_dimension_list(dims_text);
    const bool spectral = cfg.command != Command::CompareAnnulus && cfg.command != Command::PropSuite &&
                          cfg.command != Command::FCurve;
    for (int d : cfg.dims) {
      if (spectral && d < 4) throw Usage("dimensions must be >= 4");
      if (d < 2) throw Usage("dimensions must be >= 2");
    }
    if (cfg.samples < 2 && (single || cfg.command == Command::CompareAnnulus)) {
      throw Usage("--samples must be at least 2");
    }
    if (cfg.certify.max_len < 1) throw Usage("--max-len must be >= 1");
    if (cfg.panels < 2 || cfg.panels % 2 != 0) throw Usage("--panels must be even and >= 2");
    if (cfg.count < 1) throw Usage("--count must be >= 1");
    for (double r : cfg.r_in) {
      if (!(r > 0.0 && r < cfg.r_out)) throw Usage("--r-in values must lie in (0, r_out)");
    }
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = e.what();
    return outcome;
  } catch (const Usage& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = e.what();
    return outcome;
  }
  outcome.config = cfg;
  return outcome;
}

namespace {

struct Result {
  Table table;
  nlohmann::json json;  ///< overrides the table form when not null
  bool verified = true;
};

Result constants_command(const RunConfig& cfg) {
  Result r;
  r.table.header = {"d", "nu", "j1_lo", "j1_hi", "j2_lo", "j2_hi", "k_lo", "k_hi", "aI_lo", "aI_hi", "aS_lo", "aS_hi"};
  for (int d : cfg.dims) {
    const SpectralConstants c = SpectralConstants::compute(DimensionParams::make(d), cfg.roots);
    r.table.rows.push_back({double(d), c.params.nu_value(), c.j1.lo, c.j1.hi, c.j2.lo, c.j2.hi, c.k.lo, c.k.hi,
                            c.aI.lo, c.aI.hi, c.aS.lo, c.aS.hi});
    r.verified = r.verified && c.j1.hi < c.k.lo && c.k.hi < c.j2.lo && c.aI.hi < c.aS.lo;
  }
  return r;
}

Result table_command(const RunConfig& cfg, TableKind kind) {
  Result r;
  r.table.header = table_columns(kind);
  r.table.header.insert(r.table.header.begin(), "d");
  const double guard = cfg.certify.margin_guard;
  for (const TableRow& row : reproduce_tables(cfg.dims, kind, cfg.roots)) {
    std::vector<Field> fields{double(row.d)};
    for (double v : row.values) fields.push_back(v);
    r.table.rows.push_back(std::move(fields));
    switch (kind) {
      case TableKind::NecessaryCondition: r.verified = r.verified && row.at("lower") > 1.0; break;
      case TableKind::Constants: r.verified = r.verified && row.at("k_minus") < row.at("k_plus"); break;
      case TableKind::Margins:
        r.verified = r.verified && row.at("G_nu_0") <= -guard && row.at("F_nu_1") <= -guard &&
                     row.at("Fprime_nu_0") <= -guard && row.at("Gprime_nu_1") >= guard;
        break;
    }
  }
  return r;
}

Result certify_command(const RunConfig& cfg) {
  Result r;
  r.table.header = {"d", "inequality", "value", "required", "holds"};
  r.json = nlohmann::json::array();
  for (int d : cfg.dims) {
    const SpectralConstants c = SpectralConstants::compute(DimensionParams::make(d), cfg.roots);
    const ZigzagCertificate cert = zigzag_search(c, cfg.certify);
    r.json.push_back(certificate_to_json(cert, tool_version()));
    r.verified = r.verified && cert.pass;
    for (const auto& [name, value] : cert.margins) {
      const bool upper = name.rfind("Gprime", 0) == 0;
      const bool nc = name == "NecessaryCondition";
      const bool failed = std::find(cert.failing.begin(), cert.failing.end(), name) != cert.failing.end();
      r.table.rows.push_back({double(d), name, value,
                              std::string(nc ? "> 1" : (upper ? ">= guard" : "<= -guard")),
                              std::string(failed ? "no" : "yes")});
    }
  }
  return r;
}

Result mu_curve_command(const RunConfig& cfg) {
  const DimensionParams params = DimensionParams::make(cfg.dims.front());
  const std::vector<double> grid = uniform_grid(cfg.samples);
  const std::vector<DirectedValue> values = mu_curve(params, grid, cfg.roots);
  const double mu0 = values.front().lo;
  Result r;
  r.table.header = {"a", "b", "mu_lo", "mu_hi", "mu_over_mu0"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.table.rows.push_back({grid[i], b_of_a(params, grid[i]), values[i].lo, values[i].hi, values[i].mid() / mu0});
    r.verified = r.verified && values[i].lo >= mu0 * (1.0 - 1e-6);
  }
  return r;
}

Result f_curve_command(const RunConfig& cfg) {
  const DimensionParams params = DimensionParams::make(cfg.dims.front());
  const double r_max = cfg.r_max > 0.0 ? cfg.r_max : 0.999 * zero_table(params.nu).zeros[1];
  std::vector<double> radii(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) radii[i] = r_max * i / (cfg.samples - 1);
  const std::vector<double> values = f_curve(params, radii);
  Result r;
  r.table.header = {"r", "f_nu"};
  for (std::size_t i = 0; i < radii.size(); ++i) r.table.rows.push_back({radii[i], values[i]});
  return r;
}

Result compare_command(const RunConfig& cfg) {
  std::vector<ComparisonCase> cases;
  for (int d : cfg.dims) {
    for (double r_in : cfg.r_in) cases.push_back({d, r_in, cfg.r_out});
  }
  const std::vector<ComparisonResult> results = comparison_sweep(cases, cfg.panels, cfg.samples);
  Result r;
  r.table.header = {"d", "r_in", "r_out", "kappa", "max_violation", "min_margin", "quadrature_error"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const ComparisonResult& c = results[i];
    r.table.rows.push_back({double(cases[i].d), cases[i].r_in, cases[i].r_out, c.kappa, c.max_violation,
                            c.min_margin, c.quadrature_error});
    r.verified = r.verified && c.max_violation <= 1e-6;
  }
  return r;
}

Result prop_command(const RunConfig& cfg) {
  const LemmaSuiteResult s = lemma_suite(cfg.count, cfg.seed);
  Result r;
  r.table.header = {"check", "functions", "worst"};
  const double n = s.functions;
  r.table.rows.push_back({std::string("split_moment_p1"), n, s.max_split_residual[0]});
  r.table.rows.push_back({std::string("split_moment_p2"), n, s.max_split_residual[1]});
  r.table.rows.push_back({std::string("split_moment_p3"), n, s.max_split_residual[2]});
  r.table.rows.push_back({std::string("dagger_equals_star"), n, s.max_dagger_discrepancy});
  r.table.rows.push_back({std::string("restriction_failures"), n, double(s.restriction_failures)});
  r.verified = s.max_split_residual[0] == 0 && s.max_split_residual[1] == 0 && s.max_split_residual[2] == 0 &&
               s.max_dagger_discrepancy == 0 && s.restriction_failures == 0;
  return r;
}

Result dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Constants: return constants_command(cfg);
    case Command::Table1: return table_command(cfg, TableKind::NecessaryCondition);
    case Command::Table2: return table_command(cfg, TableKind::Constants);
    case Command::Table3: return table_command(cfg, TableKind::Margins);
    case Command::Certify: return certify_command(cfg);
    case Command::MuCurve: return mu_curve_command(cfg);
    case Command::FCurve: return f_curve_command(cfg);
    case Command::CompareAnnulus: return compare_command(cfg);
    case Command::PropSuite: return prop_command(cfg);
  }
  throw std::logic_error("unknown command");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Result result;
  try {
    result = dispatch(cfg);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  std::string text;
  if (cfg.format == OutputFormat::Json) {
    text = (result.json.is_null() ? to_json(result.table, cfg.digits) : result.json).dump(2) + "\n";
  } else {
    text = to_csv(result.table, cfg.digits);
  }
  if (cfg.out.empty()) {
    out << text;
  } else {
    try {
      write_atomically(resolve_output_path(cfg.out), text);
    } catch (const std::exception& e) {
      err << "cannot write output: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  if (!result.verified) {
    err << "verification failed\n";
    return kExitVerificationFailed;
  }
  return kExitPass;
}

}  // namespace twoball
