#include "twoball/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "twoball/errors.hpp"
#include "twoball/two_ball.hpp"

namespace twoball {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

double ipow(double x, int n) {
  double result = 1.0;
  while (n-- > 0) result *= x;
  return result;
}

// Bisection on a sign predicate. `negative(lo)` must hold and `negative(hi)`
// must not; the returned bracket keeps that property.
template <class Pred>
DirectedValue bisect(double lo, double hi, double tol, Pred&& negative) {
  for (int it = 0; it < 2000 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (negative(mid)) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

double twice_nu(double nu) { return 2.0 * nu; }

bool is_half_integer(double nu) {
  const double t = twice_nu(nu);
  return t == std::floor(t) && t < 1e6;
}

// Rough location of the m-th zero for orders without a cached table.
double scan_zero(double nu, int m) {
  const double step = 0.25;
  double r = std::max(step, nu);
  double prev = bessel_j(nu, r);
  int found = 0;
  for (int it = 0; it < 1000000; ++it) {
    const double next = r + step;
    const double value = bessel_j(nu, next);
    if ((prev > 0) != (value > 0)) {
      if (++found == m) return r + 0.5 * step;
    }
    r = next;
    prev = value;
  }
  throw BracketError("bessel_zero: scan did not reach the requested zero");
}

double rough_zero(double nu, int m) {
  if (is_half_integer(nu)) {
    const Order order = Order::from_twice(static_cast<int>(twice_nu(nu)));
    const BesselZeroTable& table = zero_table(order);
    if (static_cast<std::size_t>(m) <= table.zeros.size()) return table.zeros[m - 1];
    return bessel_zeros(order, static_cast<std::size_t>(m)).back();
  }
  return scan_zero(nu, m);
}

}  // namespace

DirectedValue bessel_zero(double nu, int m, const RootOptions& options) {
  if (m < 1) throw std::invalid_argument("bessel_zero: m must be >= 1");
  if (nu < 0) throw std::domain_error("bessel_zero: nu must be >= 0");
  const double z = rough_zero(nu, m);
  const double lo = std::max(z - 0.25, 0.5 * z);
  const double hi = z + 0.25;
  const double j_lo = bessel_j(nu, lo);
  const double j_hi = bessel_j(nu, hi);
  if ((j_lo > 0) == (j_hi > 0) || j_lo == 0 || j_hi == 0) {
    throw BracketError("bessel_zero: no sign change of J_nu around j_{nu," + std::to_string(m) + "}");
  }
  const bool lo_positive = j_lo > 0;
  DirectedValue v = bisect(lo, hi, options.abs_tol,
                           [&](double r) { return (bessel_j(nu, r) > 0) == lo_positive; });
  const DirectedValue out = inflate(v, options.inflation);
  const double e_lo = bessel_j(nu, out.lo);
  const double e_hi = bessel_j(nu, out.hi);
  if ((e_lo > 0) == (e_hi > 0)) throw BracketError("bessel_zero: endpoint sign check failed");
  return out;
}

DirectedValue k_nu(const DimensionParams& params, const RootOptions& options) {
  const BesselZeroTable& table = zero_table(params.nu);
  const double lo = table.zeros[0] + 1e-6;
  const double hi = table.zeros[1] - 1e-6;
  auto value = [&](double r) { return f_nu(params, r).raw(); };
  if (!(value(lo) < 0 && value(hi) > 0)) throw BracketError("k_nu: f_nu has no sign change between j1 and j2");
  const DirectedValue v = bisect(lo, hi, options.abs_tol, [&](double r) { return value(r) < 0; });
  const DirectedValue out = inflate(v, options.inflation);
  if (!(value(out.lo) < 0 && value(out.hi) > 0)) throw BracketError("k_nu: endpoint sign check failed");
  return out;
}

DirectedValue a_I(const DimensionParams& params, const DirectedValue& j, const DirectedValue& k) {
  const int d = params.d;
  auto formula = [d](double q) {
    const double s = 1.0 - ipow(q, d);
    return s <= 0 ? 0.0 : std::exp(std::log(s) / d);
  };
  // a_I decreases in j / k. Quotients are only moved when inexact.
  auto quotient_down = [](double x, double y) {
    const double q = x / y;
    return std::fma(q, y, -x) > 0 ? down(q) : q;
  };
  auto quotient_up = [](double x, double y) {
    const double q = x / y;
    return std::fma(q, y, -x) < 0 ? up(q) : q;
  };
  const double q_small = quotient_down(j.lo, k.hi);
  const double q_large = quotient_up(j.hi, k.lo);
  return {std::max(0.0, down(down(formula(q_large)))), std::min(1.0, up(up(formula(q_small))))};
}

DirectedValue a_S(const DimensionParams& params, const DirectedValue& j, const DirectedValue& k,
                  const RootOptions& options) {
  auto aK = [&](double a) { return a * TwoBallPoint::on_constraint(params, a).K; };
  const double q_lo = down(j.lo / k.hi);
  const double q_hi = up(j.hi / k.lo);
  if (!(q_hi < 1.0)) throw BracketError("a_S: j / k must be below 1");
  const DirectedValue lower = bisect(0.0, 1.0, options.abs_tol, [&](double a) { return aK(a) < q_lo; });
  const DirectedValue upper = bisect(0.0, 1.0, options.abs_tol, [&](double a) { return aK(a) < q_hi; });
  return inflate({lower.lo, upper.hi}, options.inflation);
}

DirectedValue k_of_a(const DimensionParams& params, double a, const RootOptions& options) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("k_of_a: a must lie in [0, 1]");
  if (a == 0.0 || a == 1.0) return k_nu(params, options);

  const TwoBallPoint p = TwoBallPoint::on_constraint(params, a);
  const BesselZeroTable& table = zero_table(params.nu);
  const double j1 = table.zeros[0];
  const double j2 = table.zeros[1];
  const double Ka = p.K * a;
  std::array<double, 4> poles{j1 / Ka, j2 / Ka, j1 / p.b, j2 / p.b};
  std::sort(poles.begin(), poles.end());
  const double p1 = poles[0];
  const double p2 = poles[1];

  // Both arcs meet (point M): the root is the shared pole itself.
  if (p2 - p1 <= 2.0 * kPoleExclusion) return inflate({p1, p2}, options.inflation);

  // F_nu(r, a) / K^d, which keeps its sign but not the underflow of K^d.
  const double nu = params.nu_value();
  const int d = params.d;
  auto scaled = [&](double r) {
    const double x = r * Ka;
    const ExtendedReal rj = ratio_j(nu, x);
    const double first = rj.is_pole()
                             ? rj.raw()
                             : ipow(r * a, d - 1) * (rj.raw() + ratio_i(nu, x)) / p.K;
    return first + f_nu(params, r * p.b).raw();
  };

  double offset = std::min(1e-7, 0.25 * (p2 - p1) / p1);
  double lo = p1 * (1.0 + offset);
  while (!(scaled(lo) < 0) && offset > 1e-15) {
    offset *= 0.1;
    lo = p1 * (1.0 + offset);
  }
  offset = std::min(1e-7, 0.25 * (p2 - p1) / p2);
  double hi = p2 * (1.0 - offset);
  while (!(scaled(hi) > 0) && offset > 1e-15) {
    offset *= 0.1;
    hi = p2 * (1.0 - offset);
  }
  if (!(scaled(lo) < 0 && scaled(hi) > 0)) {
    throw BracketError("k_of_a: no sign change between the first two poles");
  }
  const DirectedValue v = bisect(lo, hi, options.abs_tol, [&](double r) { return scaled(r) < 0; });
  return inflate(v, options.inflation);
}

DirectedValue mu(const DimensionParams& params, double a, const RootOptions& options) {
  const DirectedValue k = k_of_a(params, a, options);
  return {down(down(ipow(k.lo, 4))), up(up(ipow(k.hi, 4)))};
}

MPoint m_point(const DimensionParams& params, const RootOptions& options) {
  const int d = params.d;
  auto P = [d](double x) { return 2.0 * ipow(x, d) + x - 1.0; };
  const DirectedValue b = inflate(bisect(0.0, 1.0, options.abs_tol, [&](double x) { return P(x) < 0; }),
                                  options.inflation);
  auto a_of_b = [d](double x) { return std::exp(std::log1p(-ipow(x, d)) / d); };
  const DirectedValue a{down(a_of_b(b.hi)), up(a_of_b(b.lo))};
  const DirectedValue j = bessel_zero(params.nu_value(), 1, options);
  const DirectedValue k{down(j.lo / b.hi), up(j.hi / b.lo)};
  return {b, a, k};
}

SpectralConstants SpectralConstants::compute(const DimensionParams& params, const RootOptions& options) {
  SpectralConstants c;
  c.params = params;
  c.j1 = bessel_zero(params.nu_value(), 1, options);
  c.j2 = bessel_zero(params.nu_value(), 2, options);
  c.k = k_nu(params, options);
  c.aI = a_I(params, c.j1, c.k);
  c.aS = a_S(params, c.j1, c.k, options);
  return c;
}

SpectralConstants SpectralConstants::at_display_precision(int zero_decimals, int threshold_decimals) const {
  SpectralConstants c = *this;
  c.j1 = outward_round(j1, zero_decimals);
  c.j2 = outward_round(j2, zero_decimals);
  c.k = outward_round(k, zero_decimals);
  c.aI = outward_round(a_I(params, c.j1, c.k), threshold_decimals);
  c.aS = outward_round(a_S(params, c.j1, c.k), threshold_decimals);
  return c;
}

}  // namespace twoball
