#pragma once

#include <map>
#include <string>
#include <vector>

#include "twoball/roots.hpp"

namespace twoball {

struct CertifyOptions {
  /// Inequalities must hold with at least this much room.
  double margin_guard = 1e-6;
  /// Bisection width for greedy threshold searches.
  double threshold_tol = 1e-6;
  /// Longest sequence allowed on either side.
  int max_len = 64;

  friend bool operator==(const CertifyOptions&, const CertifyOptions&) = default;
};

// Directed inequality checks. Each returns the evaluated left-hand side; an
// argument landing on a pole yields the worst-case infinity for that check.

/// f(k+ K(x_next) x_next) + K(x_i)^d f(k+ b(x_i)); required <= 0.
double check_F_primed(const SpectralConstants& c, double x_i, double x_next);
/// G1~(x1) + G2~(0) with k+ inside g and k- in the G2 prefactor; required <= 0.
double check_G_primed_0(const SpectralConstants& c, double x1);
/// f(k+ K(y_next) y_next) + f(k+ b(y_i)); required <= 0.
double check_Fprime_primed(const SpectralConstants& c, double y_i, double y_next);
/// 2 T1(y) - f(k+ b)|g(k- K y . y)|[(d-1)/y^d (1 + 1/b) + 1] - (f g)(k+ b); required >= 0.
double check_Gprime_primed(const SpectralConstants& c, double y_m);

struct ZigzagCertificate {
  DimensionParams params;
  SpectralConstants constants;
  /// 0 = x_0 < x_1 < ... < x_{n+1} = a_I^+.
  std::vector<double> x_seq;
  /// a_S^- = y_0 < ... < y_{m+1} = 1.
  std::vector<double> y_seq;
  /// Keys: F_nu_<i>, G_nu_0, Fprime_nu_<i>, Gprime_nu_<m>, NecessaryCondition.
  std::map<std::string, double> margins;
  CertifyOptions options;
  bool pass = false;
  std::vector<std::string> failing;

  int n() const { return static_cast<int>(x_seq.size()) - 2; }
  int m() const { return static_cast<int>(y_seq.size()) - 2; }

  friend bool operator==(const ZigzagCertificate&, const ZigzagCertificate&) = default;
};

/// Evaluates every inequality for the given sequences and sets the verdict.
/// Throws std::invalid_argument for malformed sequences.
ZigzagCertificate evaluate_certificate(const SpectralConstants& c, const std::vector<double>& x_seq,
                                       const std::vector<double>& y_seq, const CertifyOptions& options = {});

/// Greedy construction: walk down from a_I^+ taking the smallest admissible
/// x_i until G_nu_0 holds, and up from a_S^- taking the largest admissible
/// y_i until G'_nu_m holds. When a side runs out of steps the returned
/// certificate fails and carries the margins of the last attempt.
/// Throws std::invalid_argument for max_len < 1.
ZigzagCertificate zigzag_search(const SpectralConstants& c, const CertifyOptions& options = {});

enum class TableKind { NecessaryCondition = 1, Constants = 2, Margins = 3 };

struct TableRow {
  TableKind kind = TableKind::NecessaryCondition;
  int d = 0;
  std::vector<std::string> columns;
  std::vector<double> values;

  double at(const std::string& column) const;
};

/// Column names of each table.
std::vector<std::string> table_columns(TableKind kind);

/// Sequence points used for the margin table: the published choices for
/// d = 4..9, the greedy search beyond.
struct MarginTableChoice {
  double x1;
  double y1;
};
MarginTableChoice margin_table_choice(const SpectralConstants& display_constants);

/// One row per dimension. The necessary-condition table uses the full
/// enclosures; the other two use constants at display precision.
std::vector<TableRow> reproduce_tables(const std::vector<int>& dims, TableKind kind,
                                       const RootOptions& options = {});

struct EndpointSanityReport {
  double max_near_zero = 0.0;  ///< max of F_nu(k+, a) over [0, x_1]
  double max_near_one = 0.0;   ///< max of F_nu(k+, a) over [y_m, 1]
  std::vector<double> positive_samples;
  /// Positive samples explained by k+ sitting just above k_nu
  /// (F_nu(k-, a) <= 0 at the same point).
  std::vector<double> endpoint_artifacts;
  bool flagged() const { return positive_samples.size() > endpoint_artifacts.size(); }
};

/// Diagnostic sampling of F_nu(k+, a) on grids clustered toward a = 0 and
/// a = 1 over the intervals the certificate leaves to analysis. Never part
/// of the verdict. Throws std::invalid_argument for grid_size < 16.
EndpointSanityReport sample_endpoint_sanity(const ZigzagCertificate& cert, int grid_size);

}  // namespace twoball
