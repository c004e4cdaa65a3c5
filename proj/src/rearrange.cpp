#include "twoball/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twoball {

StepFunction::StepFunction(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("StepFunction: no cells");
  for (const Cell& c : cells_) {
    if (!(c.measure > 0.0) || !std::isfinite(c.measure) || !std::isfinite(c.value)) {
      throw std::invalid_argument("StepFunction: cell measures must be positive and values finite");
    }
    total_ += c.measure;
  }
}

double StepFunction::at(double s) const {
  double start = 0.0;
  for (const Cell& c : cells_) {
    if (s < start + c.measure) return c.value;
    start += c.measure;
  }
  return cells_.back().value;
}

std::vector<double> StepFunction::breakpoints() const {
  std::vector<double> out{0.0};
  double start = 0.0;
  for (const Cell& c : cells_) {
    start += c.measure;
    out.push_back(start);
  }
  out.back() = total_;
  return out;
}

double StepFunction::moment(int p) const {
  double sum = 0.0;
  for (const Cell& c : cells_) sum += c.measure * std::pow(c.value, p);
  return sum;
}

double distribution(const StepFunction& f, double t) {
  double sum = 0.0;
  for (const Cell& c : f.cells()) {
    if (c.value > t) sum += c.measure;
  }
  return sum;
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  std::vector<Cell> cells = f.cells();
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    return x.value > y.value || (x.value == y.value && x.measure < y.measure);
  });
  std::vector<Cell> merged;
  for (const Cell& c : cells) {
    if (!merged.empty() && merged.back().value == c.value) merged.back().measure += c.measure;
    else merged.push_back(c);
  }
  return StepFunction(std::move(merged));
}

namespace {

// Decreasing rearrangement of max(sign * f, 0), restricted to its support.
std::vector<Cell> positive_part_star(const StepFunction& f, double sign) {
  std::vector<Cell> part;
  for (const Cell& c : f.cells()) {
    if (sign * c.value > 0) part.push_back({c.measure, sign * c.value});
  }
  if (part.empty()) return part;
  return decreasing_rearrangement(StepFunction(part)).cells();
}

double layout_value(const std::vector<Cell>& cells, double s) {
  double start = 0.0;
  for (const Cell& c : cells) {
    if (s < start + c.measure) return c.value;
    start += c.measure;
  }
  return 0.0;
}

std::vector<double> merged_points(std::vector<double> pts, double total) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (p >= 0.0 && p <= total) out.push_back(p);
  }
  return out;
}

}  // namespace

StepFunction talenti_dagger(const StepFunction& f) {
  const double total = f.total_measure();
  const std::vector<Cell> plus = positive_part_star(f, 1.0);
  const std::vector<Cell> minus = positive_part_star(f, -1.0);

  std::vector<double> pts{0.0, total};
  double acc = 0.0;
  for (const Cell& c : plus) pts.push_back(acc += c.measure);
  acc = 0.0;
  for (const Cell& c : minus) pts.push_back(total - (acc += c.measure));
  pts = merged_points(pts, total);

  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double width = pts[i + 1] - pts[i];
    if (!(width > 0.0)) continue;
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    const double value = layout_value(plus, mid) - layout_value(minus, total - mid);
    if (!cells.empty() && cells.back().value == value) cells.back().measure += width;
    else cells.push_back({width, value});
  }
  return StepFunction(std::move(cells));
}

double check_dagger_equals_star(const StepFunction& f) {
  const StepFunction star = decreasing_rearrangement(f);
  const StepFunction dagger = talenti_dagger(f);
  std::vector<double> pts = star.breakpoints();
  const std::vector<double> more = dagger.breakpoints();
  pts.insert(pts.end(), more.begin(), more.end());
  pts = merged_points(pts, f.total_measure());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    worst = std::max(worst, std::abs(star.at(mid) - dagger.at(mid)));
  }
  return worst;
}

namespace {

// int_0^upto g(s)^p for a laid-out step function.
double partial_moment(const StepFunction& g, double upto, int p) {
  double sum = 0.0;
  double start = 0.0;
  for (const Cell& c : g.cells()) {
    if (start >= upto) break;
    const double width = std::min(c.measure, upto - start);
    sum += width * std::pow(c.value, p);
    start += c.measure;
  }
  return sum;
}

}  // namespace

double split_moment_identity(const StepFunction& f, double split, int p) {
  const double total = f.total_measure();
  if (!(split >= 0.0 && split <= total)) throw std::invalid_argument("split_moment_identity: split out of range");
  if (p < 1) throw std::invalid_argument("split_moment_identity: p must be >= 1");
  std::vector<Cell> negated = f.cells();
  for (Cell& c : negated) c.value = -c.value;
  const StepFunction neg(std::move(negated));
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  const double lhs = partial_moment(talenti_dagger(f), split, p) +
                     sign * partial_moment(talenti_dagger(neg), total - split, p);
  return std::abs(lhs - f.moment(p));
}

bool RestrictionComparison::holds() const {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] > rhs[i]) return false;
  }
  return true;
}

RestrictionComparison hardy_littlewood_restriction(const StepFunction& f,
                                                   const std::vector<std::size_t>& subset_cells) {
  RestrictionComparison out;
  if (subset_cells.empty()) return out;
  std::vector<Cell> sub;
  for (std::size_t i : subset_cells) sub.push_back(f.cells().at(i));
  const StepFunction restricted_star = decreasing_rearrangement(StepFunction(sub));
  const StepFunction star = decreasing_rearrangement(f);
  const double measure = restricted_star.total_measure();

  std::vector<double> pts = restricted_star.breakpoints();
  const std::vector<double> more = star.breakpoints();
  pts.insert(pts.end(), more.begin(), more.end());
  pts = merged_points(pts, measure);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    out.s.push_back(pts[i]);
    out.lhs.push_back(restricted_star.at(mid));
    out.rhs.push_back(star.at(mid));
  }
  return out;
}

namespace {

struct Primitive {
  std::vector<double> start;  // cell start measures
  std::vector<double> base;   // F at cell start
  std::vector<double> value;
  double total = 0.0;

  explicit Primitive(const StepFunction& g) {
    double s = 0.0, F = 0.0;
    for (const Cell& c : g.cells()) {
      start.push_back(s);
      base.push_back(F);
      value.push_back(c.value);
      s += c.measure;
      F += c.measure * c.value;
    }
    total = s;
    start.push_back(s);
    base.push_back(F);
    value.push_back(0.0);
  }

  double operator()(double m) const {
    const auto it = std::upper_bound(start.begin(), start.end(), m);
    const std::size_t i = it == start.begin() ? 0 : static_cast<std::size_t>(it - start.begin()) - 1;
    return base[i] + value[i] * (std::min(m, total) - start[i]);
  }
};

}  // namespace

PoissonSolution radial_poisson(const StepFunction& fstar, const DimensionParams& params, double omega_measure,
                               int panels) {
  if (panels < 2 || panels % 2 != 0) throw std::invalid_argument("radial_poisson: panels must be even and >= 2");
  if (!(omega_measure > 0.0)) throw std::invalid_argument("radial_poisson: measure must be positive");
  if (std::abs(fstar.total_measure() - omega_measure) > 1e-12 * std::max(1.0, omega_measure)) {
    throw std::invalid_argument("radial_poisson: f* must live on a set of the given measure");
  }
  const auto& cells = fstar.cells();
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].value > cells[i - 1].value) throw std::invalid_argument("radial_poisson: f* is not nonincreasing");
  }

  const int d = params.d;
  const double w = params.omega_d;
  const double R = std::pow(omega_measure / w, 1.0 / d);
  const Primitive F(fstar);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return F(w * std::pow(t, d)) / (d * w * std::pow(t, d - 1));
  };
  std::vector<double> breaks;
  for (double m : F.start) {
    const double t = std::pow(std::min(m, omega_measure) / w, 1.0 / d);
    if (t > 0.0 && t < R) breaks.push_back(t);
  }

  // Simpson over [lo, hi], split at interior breakpoints.
  auto simpson = [&](double lo, double hi) {
    double sum = 0.0;
    double a = lo;
    auto piece = [&](double x, double y) {
      return (y - x) / 6.0 * (integrand(x) + 4.0 * integrand(0.5 * (x + y)) + integrand(y));
    };
    for (double t : breaks) {
      if (t > a && t < hi) {
        sum += piece(a, t);
        a = t;
      }
    }
    return sum + piece(a, hi);
  };

  auto solve = [&](int n) {
    std::vector<double> v(n + 1, 0.0);
    for (int k = n - 1; k >= 0; --k) v[k] = v[k + 1] + simpson(R * k / n, R * (k + 1) / n);
    return v;
  };

  PoissonSolution out;
  out.profile.domain = RadialDomain::Ball;
  out.profile.d = d;
  out.profile.r_out = R;
  out.profile.values = solve(panels);
  const std::vector<double> coarse = solve(panels / 2);
  for (int k = 0; k <= panels; ++k) out.profile.radii.push_back(R * k / panels);
  for (int k = 0; k <= panels / 2; ++k) {
    out.error_estimate = std::max(out.error_estimate, std::abs(out.profile.values[2 * k] - coarse[k]) / 15.0);
  }
  return out;
}

namespace {

double phi(int d, double r) { return d == 2 ? std::log(r) : std::pow(r, 2 - d); }
double phi_prime(int d, double r) { return d == 2 ? 1.0 / r : (2 - d) * std::pow(r, 1 - d); }

}  // namespace

AnnulusSolution annulus_solution(const DimensionParams& params, double r_in, double r_out, double f) {
  if (!(r_in > 0.0 && r_in < r_out) || !std::isfinite(r_out)) {
    throw std::invalid_argument("annulus_solution: need 0 < r_in < r_out");
  }
  if (!(f > 0.0)) throw std::invalid_argument("annulus_solution: source must be positive");
  const int d = params.d;
  AnnulusSolution s;
  s.params = params;
  s.r_in = r_in;
  s.r_out = r_out;
  s.f = f;
  s.B = f * (r_out * r_out - r_in * r_in) / (2.0 * d * (phi(d, r_out) - phi(d, r_in)));
  s.A = f * r_in * r_in / (2.0 * d) - s.B * phi(d, r_in);
  return s;
}

double AnnulusSolution::value(double r) const {
  const int d = params.d;
  return -f * r * r / (2.0 * d) + A + B * phi(d, r);
}

double AnnulusSolution::derivative(double r) const {
  const int d = params.d;
  return -f * r / d + B * phi_prime(d, r);
}

double AnnulusSolution::argmax() const {
  const int d = params.d;
  if (d == 2) return std::sqrt(2.0 * B / f);
  return std::pow(d * (2.0 - d) * B / f, 1.0 / d);
}

RadialProfile AnnulusSolution::profile(int points) const {
  if (points < 2) throw std::invalid_argument("AnnulusSolution::profile: need at least two points");
  RadialProfile p;
  p.domain = RadialDomain::Annulus;
  p.d = params.d;
  p.r_in = r_in;
  p.r_out = r_out;
  for (int i = 0; i < points; ++i) {
    const double r = i + 1 == points ? r_out : r_in + (r_out - r_in) * i / (points - 1);
    p.radii.push_back(r);
    p.values.push_back(i == 0 || i + 1 == points ? 0.0 : value(r));
  }
  return p;
}

double AnnulusSolution::rearranged_radius() const {
  const int d = params.d;
  return std::pow(std::pow(r_out, d) - std::pow(r_in, d), 1.0 / d);
}

double AnnulusSolution::rearranged(double rho) const {
  const int d = params.d;
  const double rm = argmax();
  const double top = value(rm);
  if (rho <= 0.0) return top;
  if (rho >= rearranged_radius()) return 0.0;
  const double target = std::pow(rho, d);

  // Radii where u crosses level t on each side of the maximum.
  auto crossing = [&](double t, double lo, double hi, bool increasing) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((value(mid) < t) == increasing) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto level_measure = [&](double t) {
    const double r1 = crossing(t, r_in, rm, true);
    const double r2 = crossing(t, rm, r_out, false);
    return std::pow(r2, d) - std::pow(r1, d);
  };
  double lo = 0.0, hi = top;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (level_measure(mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

HoleGeometry HoleGeometry::make(int d, double omega_measure, double hole_measure) {
  if (!(omega_measure > 0.0) || hole_measure < 0.0) throw std::invalid_argument("HoleGeometry: bad measures");
  const double e = (d - 1.0) / d;
  HoleGeometry g;
  g.omega_measure = omega_measure;
  g.hole_measure = hole_measure;
  g.kappa = std::pow(omega_measure, e) / (std::pow(omega_measure + hole_measure, e) + std::pow(hole_measure, e));
  return g;
}

ComparisonResult verify_comparison(const DimensionParams& params, double r_in, double r_out, int quadrature_n,
                                   int samples) {
  if (samples < 2) throw std::invalid_argument("verify_comparison: need at least two samples");
  const int d = params.d;
  const AnnulusSolution u = annulus_solution(params, r_in, r_out, 1.0);
  const double omega = params.omega_d * (std::pow(r_out, d) - std::pow(r_in, d));
  const double hole = params.omega_d * std::pow(r_in, d);
  const HoleGeometry geometry = HoleGeometry::make(d, omega, hole);
  const PoissonSolution v = radial_poisson(StepFunction({{omega, 1.0}}), params, omega, quadrature_n);

  ComparisonResult out;
  out.kappa = geometry.kappa;
  out.quadrature_error = v.error_estimate;
  out.max_violation = -std::numeric_limits<double>::infinity();
  out.min_margin = std::numeric_limits<double>::infinity();
  out.classical_excess = -std::numeric_limits<double>::infinity();
  const double k2 = geometry.kappa * geometry.kappa;
  for (int i = 0; i < samples; ++i) {
    const std::size_t node = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * quadrature_n / (samples - 1)));
    const double rho = v.profile.radii[node];
    const double vv = v.profile.values[node];
    const double us = u.rearranged(rho);
    out.max_violation = std::max(out.max_violation, us - k2 * vv);
    out.min_margin = std::min(out.min_margin, k2 * vv - us);
    out.classical_excess = std::max(out.classical_excess, k2 * vv - vv);
  }
  return out;
}

}  // namespace twoball
