#include "twoball/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twoball/errors.hpp"
#include "twoball/two_ball.hpp"

namespace twoball {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, int n) {
  double result = 1.0;
  while (n-- > 0) result *= x;
  return result;
}

double sum_or_worst(const ExtendedReal& x, double w, const ExtendedReal& y, double worst) {
  if (x.is_pole() || (w != 0.0 && y.is_pole())) return worst;
  return x.raw() + (w != 0.0 ? w * y.raw() : 0.0);
}

// Largest a with b(a) >= q, i.e. where k b(a) reaches the first pole.
double a_where_b_equals(const DimensionParams& params, double q) {
  return std::exp(std::log1p(-ipow(q, params.d)) / params.d);
}

// Smallest a with a K(a) >= q.
double a_where_aK_equals(const DimensionParams& params, double q) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const TwoBallPoint p = TwoBallPoint::on_constraint(params, mid);
    if (mid * p.K < q) lo = mid;
    else hi = mid;
  }
  return hi;
}

double first_zero(const SpectralConstants& c) { return zero_table(c.params.nu).zeros[0]; }

// Bisection on a monotone predicate; `good_at_hi` selects which end is valid.
// Returns the valid end of the final bracket, or NaN if neither end is valid.
template <class Pred>
double threshold(double lo, double hi, double tol, bool good_at_hi, Pred&& good) {
  const bool lo_good = good(lo);
  const bool hi_good = good(hi);
  if (good_at_hi ? !hi_good : !lo_good) return std::numeric_limits<double>::quiet_NaN();
  if (good_at_hi ? lo_good : hi_good) return good_at_hi ? lo : hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (good(mid) == good_at_hi) hi = mid;
    else lo = mid;
  }
  return good_at_hi ? hi : lo;
}

std::string indexed(const char* stem, int i) { return std::string(stem) + "_" + std::to_string(i); }

}  // namespace

double check_F_primed(const SpectralConstants& c, double x_i, double x_next) {
  const DimensionParams& params = c.params;
  const double kp = c.k.plus();
  const TwoBallPoint next = TwoBallPoint::on_constraint(params, x_next);
  const TwoBallPoint cur = TwoBallPoint::on_constraint(params, x_i);
  return sum_or_worst(f_nu(params, kp * next.K * x_next), ipow(cur.K, params.d), f_nu(params, kp * cur.b), kInf);
}

double check_G_primed_0(const SpectralConstants& c, double x1) {
  const TwoBallPoint p1 = TwoBallPoint::on_constraint(c.params, x1);
  const TwoBallPoint p0 = TwoBallPoint::on_constraint(c.params, 0.0);
  const ExtendedReal g1 = g1_term(p1, c.k.plus());
  const ExtendedReal g2 = g2_term(p0, c.k.plus(), c.k.minus());
  return sum_or_worst(g1, 1.0, g2, kInf);
}

double check_Fprime_primed(const SpectralConstants& c, double y_i, double y_next) {
  const DimensionParams& params = c.params;
  const double kp = c.k.plus();
  const TwoBallPoint next = TwoBallPoint::on_constraint(params, y_next);
  const TwoBallPoint cur = TwoBallPoint::on_constraint(params, y_i);
  return sum_or_worst(f_nu(params, kp * next.K * y_next), 1.0, f_nu(params, kp * cur.b), kInf);
}

double check_Gprime_primed(const SpectralConstants& c, double y) {
  const DimensionParams& params = c.params;
  const int d = params.d;
  const double kp = c.k.plus();
  const double km = c.k.minus();
  const TwoBallPoint p = TwoBallPoint::on_constraint(params, y);
  const ExtendedReal fb = f_nu(params, kp * p.b);
  const ExtendedReal gKy = g_nu(params, km * p.K * y);
  const ExtendedReal gb = g_nu(params, kp * p.b);
  if (fb.is_pole() || gKy.is_pole() || gb.is_pole()) return -kInf;
  const double bracket = (d - 1.0) / ipow(y, d) * (1.0 + 1.0 / p.b) + 1.0;
  return 2.0 * t1(p) - fb.raw() * std::abs(gKy.raw()) * bracket - fb.raw() * gb.raw();
}

ZigzagCertificate evaluate_certificate(const SpectralConstants& c, const std::vector<double>& x_seq,
                                       const std::vector<double>& y_seq, const CertifyOptions& options) {
  if (x_seq.size() < 3 || y_seq.size() < 3) {
    throw std::invalid_argument("evaluate_certificate: each sequence needs at least one interior point");
  }
  if (x_seq.front() != 0.0 || x_seq.back() != c.aI.plus()) {
    throw std::invalid_argument("evaluate_certificate: x sequence must run from 0 to a_I^+");
  }
  if (y_seq.front() != c.aS.minus() || y_seq.back() != 1.0) {
    throw std::invalid_argument("evaluate_certificate: y sequence must run from a_S^- to 1");
  }
  if (!std::is_sorted(x_seq.begin(), x_seq.end(), std::less_equal<>()) ||
      std::adjacent_find(x_seq.begin(), x_seq.end()) != x_seq.end() ||
      !std::is_sorted(y_seq.begin(), y_seq.end(), std::less_equal<>()) ||
      std::adjacent_find(y_seq.begin(), y_seq.end()) != y_seq.end()) {
    throw std::invalid_argument("evaluate_certificate: sequences must be strictly increasing");
  }

  ZigzagCertificate cert;
  cert.params = c.params;
  cert.constants = c;
  cert.x_seq = x_seq;
  cert.y_seq = y_seq;
  cert.options = options;
  const double guard = options.margin_guard;
  auto record = [&](const std::string& name, double value, bool ok) {
    cert.margins[name] = value;
    if (!ok) cert.failing.push_back(name);
  };

  const int n = cert.n();
  const int m = cert.m();
  record("G_nu_0", check_G_primed_0(c, x_seq[1]), check_G_primed_0(c, x_seq[1]) <= -guard);
  for (int i = 1; i <= n; ++i) {
    const double v = check_F_primed(c, x_seq[i], x_seq[i + 1]);
    record(indexed("F_nu", i), v, v <= -guard);
  }
  for (int i = 0; i < m; ++i) {
    const double v = check_Fprime_primed(c, y_seq[i], y_seq[i + 1]);
    record(indexed("Fprime_nu", i), v, v <= -guard);
  }
  const double gp = check_Gprime_primed(c, y_seq[m]);
  record(indexed("Gprime_nu", m), gp, gp >= guard);
  const DirectedValue nc = necessary_condition(c.params, c.j1, c.k);
  record("NecessaryCondition", nc.lo, nc.lo > 1.0);
  cert.pass = cert.failing.empty();
  return cert;
}

ZigzagCertificate zigzag_search(const SpectralConstants& c, const CertifyOptions& options) {
  if (options.max_len < 1) throw std::invalid_argument("zigzag_search: max_len must be >= 1");
  const DimensionParams& params = c.params;
  const double guard = options.margin_guard;
  const double tol = options.threshold_tol;
  const double j = first_zero(c);
  const double q = j / c.k.plus();

  // Descending x side: points stored from a_I^+ downward.
  std::vector<double> xs{c.aI.plus()};
  bool x_done = false;
  const double x_pole = a_where_b_equals(params, q);
  for (int step = 0; step < options.max_len && !x_done; ++step) {
    const double upper = xs.back();
    const double top = step == 0 ? std::min(upper, x_pole * (1.0 - 1e-6)) : upper;
    const double x = threshold(0.0, top, tol, true,
                               [&](double t) { return check_F_primed(c, t, upper) <= -guard; });
    if (!(x > 0.0) || x >= upper) break;
    xs.push_back(x);
    x_done = check_G_primed_0(c, x) <= -guard;
  }
  xs.push_back(0.0);
  std::reverse(xs.begin(), xs.end());

  // Ascending y side.
  std::vector<double> ys{c.aS.minus()};
  bool y_done = false;
  const double y_pole = a_where_aK_equals(params, q);
  for (int step = 0; step < options.max_len && !y_done; ++step) {
    const double lower = ys.back();
    const double bottom = step == 0 ? std::max(lower, y_pole * (1.0 + 1e-6)) : lower;
    const double y = threshold(bottom, 1.0, tol, false,
                               [&](double t) { return check_Fprime_primed(c, lower, t) <= -guard; });
    if (!(y < 1.0) || y <= lower) break;
    ys.push_back(y);
    y_done = check_Gprime_primed(c, y) >= guard;
  }
  ys.push_back(1.0);

  if (xs.size() < 3 || ys.size() < 3) {
    // No admissible first step; report the endpoints alone.
    ZigzagCertificate cert;
    cert.params = params;
    cert.constants = c;
    cert.x_seq = xs;
    cert.y_seq = ys;
    cert.options = options;
    if (xs.size() < 3) cert.failing.push_back("F_nu_1");
    if (ys.size() < 3) cert.failing.push_back("Fprime_nu_0");
    return cert;
  }
  return evaluate_certificate(c, xs, ys, options);
}

double TableRow::at(const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("TableRow: no column " + column);
  return values[static_cast<std::size_t>(it - columns.begin())];
}

std::vector<std::string> table_columns(TableKind kind) {
  switch (kind) {
    case TableKind::NecessaryCondition: return {"value", "lower", "upper"};
    case TableKind::Constants: return {"j_minus", "k_minus", "k_plus", "aI_plus", "aS_minus"};
    case TableKind::Margins: return {"G_nu_0", "F_nu_1", "Fprime_nu_0", "Gprime_nu_1", "x1", "y1"};
  }
  return {};
}

MarginTableChoice margin_table_choice(const SpectralConstants& c) {
  static const double published[] = {0.83, 0.88, 0.90, 0.92, 0.93, 0.94};
  const int d = c.params.d;
  if (d >= 4 && d <= 9) return {published[d - 4], 0.999};
  const ZigzagCertificate cert = zigzag_search(c);
  if (cert.n() != 1 || cert.m() != 1) {
    throw NumericalError("margin table: greedy search needs more than one point per side in d = " +
                         std::to_string(d));
  }
  return {cert.x_seq[1], cert.y_seq[1]};
}

std::vector<TableRow> reproduce_tables(const std::vector<int>& dims, TableKind kind, const RootOptions& options) {
  if (dims.empty()) throw std::invalid_argument("reproduce_tables: no dimensions");
  std::vector<TableRow> rows;
  for (int d : dims) {
    if (d < 4) throw std::invalid_argument("reproduce_tables: dimensions must be >= 4");
    const DimensionParams params = DimensionParams::make(d);
    const SpectralConstants full = SpectralConstants::compute(params, options);
    TableRow row;
    row.kind = kind;
    row.d = d;
    row.columns = table_columns(kind);
    switch (kind) {
      case TableKind::NecessaryCondition: {
        const DirectedValue nc = necessary_condition(params, full.j1, full.k);
        row.values = {nc.mid(), nc.lo, nc.hi};
        break;
      }
      case TableKind::Constants: {
        const SpectralConstants c = full.at_display_precision();
        row.values = {c.j1.minus(), c.k.minus(), c.k.plus(), c.aI.plus(), c.aS.minus()};
        break;
      }
      case TableKind::Margins: {
        const SpectralConstants c = full.at_display_precision();
        const MarginTableChoice choice = margin_table_choice(c);
        row.values = {check_G_primed_0(c, choice.x1), check_F_primed(c, choice.x1, c.aI.plus()),
                      check_Fprime_primed(c, c.aS.minus(), choice.y1), check_Gprime_primed(c, choice.y1),
                      choice.x1, choice.y1};
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EndpointSanityReport sample_endpoint_sanity(const ZigzagCertificate& cert, int grid_size) {
  if (grid_size < 16) throw std::invalid_argument("sample_endpoint_sanity: grid_size must be >= 16");
  const SpectralConstants& c = cert.constants;
  const double x1 = cert.x_seq.at(1);
  const double ym = cert.y_seq.at(cert.y_seq.size() - 2);

  // Uniform points plus a geometric cluster (ratio 1/2) toward the analytic end.
  auto grid = [grid_size](double from, double to, bool cluster_at_from) {
    std::vector<double> pts;
    for (int i = 0; i < grid_size; ++i) pts.push_back(from + (to - from) * i / (grid_size - 1));
    double gap = 0.5 * (to - from);
    for (int i = 0; i < 20; ++i, gap *= 0.5) pts.push_back(cluster_at_from ? from + gap : to - gap);
    std::sort(pts.begin(), pts.end());
    return pts;
  };

  EndpointSanityReport report;
  report.max_near_zero = -kInf;
  report.max_near_one = -kInf;
  auto visit = [&](double a, double& running_max) {
    const ExtendedReal v = F_nu(c.params, c.k.plus(), a);
    const double value = v.raw();
    running_max = std::max(running_max, value);
    if (value > 0) {
      report.positive_samples.push_back(a);
      if (F_nu(c.params, c.k.minus(), a).raw() <= 0) report.endpoint_artifacts.push_back(a);
    }
  };
  for (double a : grid(0.0, x1, true)) visit(a, report.max_near_zero);
  for (double a : grid(ym, 1.0, false)) visit(a, report.max_near_one);
  return report;
}

}  // namespace twoball
