#include "twoball/two_ball.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoball/errors.hpp"

namespace twoball {
namespace {

double ipow(double x, int n) {
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

void check_unit(double a, const char* who) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error(std::string(who) + ": a must lie in [0, 1]");
}

// Pole-aware sum of two extended values; a zero weight drops the term.
ExtendedReal weighted_sum(const ExtendedReal& x, double w, const ExtendedReal& y) {
  const bool y_counts = w != 0.0;
  if (x.is_finite() && (!y_counts || y.is_finite())) {
    return ExtendedReal::finite(x.raw() + (y_counts ? w * y.raw() : 0.0));
  }
  if (x.is_pole()) return x;
  return ExtendedReal::pole(y.sign());
}

// Zeros used for the cancellation-free form; the omitted tail is below
// 1e-20 of the sum for r under the first few zeros.
constexpr std::size_t kCurveSeriesTerms = 4096;

}  // namespace

double b_of_a(const DimensionParams& params, double a) {
  check_unit(a, "b_of_a");
  const int d = params.d;
  // Near a = 1 the complement 1 - a^d is formed from a - 1, which is exact.
  const double complement = a > 0.5 ? -std::expm1(d * std::log1p(a - 1.0)) : -ipow(a, d);
  return a > 0.5 ? std::exp(std::log(complement) / d) : std::exp(std::log1p(complement) / d);
}

TwoBallPoint TwoBallPoint::on_constraint(const DimensionParams& params, double a) {
  TwoBallPoint p;
  p.params = params;
  p.a = a;
  p.b = b_of_a(params, a);
  p.K = K_of(p);
  return p;
}

double K_of(const TwoBallPoint& point) {
  const int d = point.params.d;
  const double sum = ipow(point.a, d) + ipow(point.b, d);
  const double denom = std::pow(sum, (d - 1.0) / d) + ipow(point.b, d - 1);
  return ipow(point.a, d - 1) / denom;
}

ConstraintDerivatives derivatives(const TwoBallPoint& p) {
  if (!(p.a > 0.0 && p.a < 1.0) || p.b <= 0.0) {
    throw std::domain_error("derivatives: a must lie in (0, 1)");
  }
  const int d = p.params.d;
  const double A = ipow(p.a, d - 1);
  const double B = ipow(p.b, d - 1);
  ConstraintDerivatives out;
  out.b_prime = -A / B;
  out.K_prime = (d - 1) * (p.b + 1.0) * p.K * p.K / (p.a * p.b * A);
  return out;
}

ExtendedReal F_nu(const DimensionParams& params, double k, double a) {
  const TwoBallPoint p = TwoBallPoint::on_constraint(params, a);
  const ExtendedReal first = f_nu(params, k * p.K * p.a);
  const double weight = ipow(p.K, params.d);
  const ExtendedReal second = f_nu(params, k * p.b);
  return weighted_sum(first, weight, second);
}

DirectedValue necessary_condition(const DimensionParams& params, const DirectedValue& j,
                                  const DirectedValue& k) {
  const int d = params.d;
  auto value = [d](double q) { return 2.0 * ipow(q, d) + q; };
  const double inf = std::numeric_limits<double>::infinity();
  const double q_lo = std::nextafter(j.lo / k.hi, -inf);
  const double q_hi = std::nextafter(j.hi / k.lo, inf);
  return {std::nextafter(std::nextafter(value(q_lo), -inf), -inf),
          std::nextafter(std::nextafter(value(q_hi), inf), inf)};
}

double t1(const TwoBallPoint& p) {
  const ConstraintDerivatives der = derivatives(p);
  return ipow(p.a * p.K, p.params.d) * der.K_prime / p.K;
}

ExtendedReal g1_term(const TwoBallPoint& p, double k) {
  const ConstraintDerivatives der = derivatives(p);
  const ExtendedReal g = g_nu(p.params, k * p.K * p.a);
  const double factor = (p.a * der.K_prime + p.K) * ipow(k * p.K, p.params.d - 1);
  if (g.is_pole()) return g;
  return ExtendedReal::finite(factor * g.raw());
}

ExtendedReal g2_term(const TwoBallPoint& p, double k_argument, double k_prefactor) {
  const ExtendedReal g = g_nu(p.params, k_argument * p.b);
  if (g.is_pole()) return g;
  return ExtendedReal::finite(ipow(k_prefactor, p.params.d - 1) * g.raw());
}

T1G1G2 t1_g1_g2(const TwoBallPoint& p, double k_plus, double k_minus) {
  return {t1(p), g1_term(p, k_plus), g2_term(p, k_plus, k_minus)};
}

DerivativeDecomposition dF_da_decomposition(const DimensionParams& params, double k, double a,
                                            double curve_tolerance) {
  const ExtendedReal F = F_nu(params, k, a);
  if (F.is_pole()) throw PoleError("dF_da_decomposition: F_nu is pole-tagged");
  if (std::abs(F.raw()) > curve_tolerance) {
    throw PreconditionError("dF_da_decomposition: point is off the curve F_nu(k, a) = 0");
  }
  const TwoBallPoint p = TwoBallPoint::on_constraint(params, a);
  const int d = params.d;
  const ConstraintDerivatives der = derivatives(p);
  const T1G1G2 parts = t1_g1_g2(p, k, k);
  const double fb = f_nu(params, k * p.b).value();
  const double fKa = f_nu(params, k * p.K * a).value();
  DerivativeDecomposition out;
  out.t1_term = 2.0 * ipow(k, d) * parts.t1;
  out.t2_term = d * der.K_prime * ipow(p.K, d - 1) * fb;
  out.t3_term = k * ipow(a, d - 1) * (parts.g1.value() + parts.g2.value()) * fKa;
  out.total = out.t1_term + out.t2_term + out.t3_term;

  const double r = k * p.K * a;
  const double r2 = r * r;
  const std::vector<double> zeros = bessel_zeros(params.nu, kCurveSeriesTerms);
  double sum = 0.0;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    const double j = *it;
    sum += 1.0 / (j * j * (j - r) * (j + r) * (j * j + r2));
  }
  out.t12_term = -4.0 * d * (der.K_prime / p.K) * ipow(r, d + 4) * sum;
  return out;
}

}  // namespace twoball
