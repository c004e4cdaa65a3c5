#pragma once

#include <cmath>
#include <limits>

namespace twoball {

/// Conservative enclosure [lo, hi] of a real constant. Inequalities pick the
/// endpoint that makes them harder to satisfy: lo plays x^- and hi plays x^+.
struct DirectedValue {
  double lo = 0.0;
  double hi = 0.0;

  static DirectedValue point(double x) { return {x, x}; }

  double minus() const { return lo; }
  double plus() const { return hi; }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const DirectedValue& other) const { return lo <= other.lo && other.hi <= hi; }

  friend bool operator==(const DirectedValue&, const DirectedValue&) = default;
};

/// Widens by a relative amount on each side and one ulp further out.
inline DirectedValue inflate(const DirectedValue& v, double relative) {
  const double inf = std::numeric_limits<double>::infinity();
  return {std::nextafter(v.lo - relative * std::abs(v.lo), -inf),
          std::nextafter(v.hi + relative * std::abs(v.hi), inf)};
}

/// Rounds lo down and hi up to `decimals` decimal places. The result still
/// encloses the original interval.
inline DirectedValue outward_round(const DirectedValue& v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double lo = std::floor(v.lo * scale) / scale;
  double hi = std::ceil(v.hi * scale) / scale;
  // Division may round back across the original endpoint.
  const double inf = std::numeric_limits<double>::infinity();
  while (lo > v.lo) lo = std::nextafter(lo, -inf);
  while (hi < v.hi) hi = std::nextafter(hi, inf);
  return {lo, hi};
}

}  // namespace twoball
