#include "twoball/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "twoball/errors.hpp"

namespace twoball {

namespace {

using Quad = __float128;

Quad quad_abs(Quad x) { return x < 0 ? -x : x; }

// Above this argument the ascending series loses too many digits even in
// quad precision and the Hankel expansion takes over.
constexpr double kSeriesLimit = 50.0;

void check_args(double nu, double r, const char* who) {
  if (!(nu >= 0.0)) throw std::domain_error(std::string(who) + ": order must be >= 0");
  if (!(r >= 0.0)) throw std::domain_error(std::string(who) + ": argument must be >= 0");
}

// sum_{m>=0} (sign * r^2/4)^m / (m! (nu+1)_m), summed in quad precision
// with Neumaier compensation.
double ascending_sum(double nu, double r, int sign) {
  const Quad z = Quad(r) * Quad(r) / 4;
  const Quad signed_z = sign < 0 ? -z : z;
  Quad term = 1;
  Quad sum = 1;
  Quad comp = 0;
  for (int m = 1; m < 2000; ++m) {
    term *= signed_z / (Quad(m) * (Quad(nu) + Quad(m)));
    const Quad t = sum + term;
    if (quad_abs(sum) >= quad_abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    if (Quad(m) > z && quad_abs(term) <= Quad(1e-36) * quad_abs(sum)) break;
  }
  return static_cast<double>(sum + comp);
}

double series_prefactor(double nu, double r) {
  return std::pow(0.5 * r, nu) / std::tgamma(nu + 1.0);
}

// Hankel expansion coefficients a_k(nu) / r^k, stopped at the smallest term.
template <class Visit>
void hankel_terms(double nu, double r, Visit&& visit) {
  const double mu = 4.0 * nu * nu;
  double a = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (k * 8.0 * r);
    }
    if (std::abs(a) > previous) break;
    visit(k, a);
    previous = std::abs(a);
    if (std::abs(a) < 1e-17) break;
  }
}

double hankel_j(double nu, double r) {
  double p = 0.0;
  double q = 0.0;
  hankel_terms(nu, r, [&](int k, double a) {
    const double s = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += s * a;
    } else {
      q += s * a;
    }
  });
  const double chi = r - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * r)) * (p * std::cos(chi) - q * std::sin(chi));
}

double hankel_i(double nu, double r) {
  double s = 0.0;
  hankel_terms(nu, r, [&](int k, double a) { s += (k % 2 == 0) ? a : -a; });
  return std::exp(r) / std::sqrt(2.0 * std::numbers::pi * r) * s;
}

// Modified Lentz evaluation of 1/(b1 + a/(b2 + a/(b3 + ...))) with
// b_k = 2(nu+k)/r. a = -1 gives J_{nu+1}/J_nu, a = +1 gives I_{nu+1}/I_nu.
double order_ratio_cf(double nu, double r, double a) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 2.0 * std::numeric_limits<double>::epsilon();
  double f = tiny;
  double c = f;
  double d = 0.0;
  const int max_terms = 20000 + static_cast<int>(4.0 * r);
  for (int k = 1; k <= max_terms; ++k) {
    const double ak = (k == 1) ? 1.0 : a;
    const double bk = 2.0 * (nu + k) / r;
    d = bk + ak * d;
    if (d == 0.0) d = tiny;
    c = bk + ak / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) return f;
  }
  throw NumericalError("continued fraction for the Bessel order ratio did not converge");
}

}  // namespace

DimensionParams DimensionParams::make(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
  DimensionParams p;
  p.d = d;
  p.nu = Order::for_dimension(d);
  p.omega_d = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  p.c_d = d * std::pow(p.omega_d, 1.0 / d);
  return p;
}

double ExtendedReal::value() const {
  if (pole_) throw PoleError("value requested at a pole");
  return value_;
}

double bessel_j(double nu, double r) {
  check_args(nu, r, "bessel_j");
  if (r == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (r > kSeriesLimit) return hankel_j(nu, r);
  return series_prefactor(nu, r) * ascending_sum(nu, r, -1);
}

double bessel_i(double nu, double r) {
  check_args(nu, r, "bessel_i");
  if (r == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (r > kSeriesLimit) return hankel_i(nu, r);
  return series_prefactor(nu, r) * ascending_sum(nu, r, +1);
}

ExtendedReal ratio_j(double nu, double r) {
  check_args(nu, r, "ratio_j");
  if (r == 0.0) return ExtendedReal::finite(0.0);
  const double ratio = order_ratio_cf(nu, r, -1.0);
  if (!std::isfinite(ratio)) return ExtendedReal::pole(ratio > 0 ? 1 : -1);
  // One Newton step J/J' = 1/(nu/r - ratio) estimates the distance to the
  // nearest zero of J_nu. |ratio| > 1 excludes the removable zero at r = 0.
  if (std::abs(ratio) > 1.0) {
    const double distance = 1.0 / std::abs(nu / r - ratio);
    if (distance < kPoleExclusion) return ExtendedReal::pole(ratio > 0 ? 1 : -1);
  }
  return ExtendedReal::finite(ratio);
}

double ratio_i(double nu, double r) {
  check_args(nu, r, "ratio_i");
  if (r == 0.0) return 0.0;
  return order_ratio_cf(nu, r, 1.0);
}

ExtendedReal f_nu(const DimensionParams& params, double r) {
  if (!(r >= 0.0)) throw std::domain_error("f_nu: argument must be >= 0");
  if (r == 0.0) return ExtendedReal::finite(0.0);
  const double nu = params.nu_value();
  const ExtendedReal rj = ratio_j(nu, r);
  if (rj.is_pole()) return rj;
  return ExtendedReal::finite(std::pow(r, params.d - 1) * (rj.raw() + ratio_i(nu, r)));
}

ExtendedReal g_nu(const DimensionParams& params, double r) {
  if (!(r > 0.0)) throw std::domain_error("g_nu: argument must be > 0");
  const BesselZeroTable& table = zero_table(params.nu);
  // Below half the first zero the ratio difference cancels; use the zero sum.
  if (r < 0.5 * table.zeros.front()) {
    return ExtendedReal::finite(4.0 * std::pow(r, 4 - params.d) * s_nu(params, r));
  }
  const double nu = params.nu_value();
  const ExtendedReal rj = ratio_j(nu, r);
  if (rj.is_pole()) return rj;
  return ExtendedReal::finite(std::pow(r, 1 - params.d) * (rj.raw() - ratio_i(nu, r)));
}

double s_nu(const DimensionParams& params, double r) {
  const BesselZeroTable& table = zero_table(params.nu);
  if (!(r >= 0.0) || r > table.k_nu * (1.0 + 1e-12)) {
    throw std::domain_error("s_nu: argument outside [0, k_nu]");
  }
  if (std::abs(r - table.zeros.front()) < kPoleExclusion) {
    throw PoleError("s_nu: argument within the pole exclusion of j_{nu,1}");
  }
  // S = sum_{m<=M} 1/(j^4 - r^4) + (sigma2 - sum_{m<=M} j^-4) + R_M, with
  // 0 <= R_M = r^4 sum_{m>M} 1/(j^4 (j^4 - r^4)) bounded by the tail estimate.
  constexpr std::size_t kMinTerms = 64;
  constexpr double kTailTolerance = 1e-12;
  const double r2 = r * r;
  const double r4 = r2 * r2;
  double direct = 0.0;
  double partial_sigma2 = 0.0;
  std::size_t m = 0;
  for (; m < table.zeros.size(); ++m) {
    if (m >= kMinTerms && r4 * zero_sum_tail_bound(m, r, 8) < kTailTolerance) break;
    const double j = table.zeros[m];
    const double j2 = j * j;
    direct += 1.0 / ((j - r) * (j + r) * (j2 + r2));
    partial_sigma2 += 1.0 / (j2 * j2);
  }
  if (r4 * zero_sum_tail_bound(m, r, 8) >= kTailTolerance) {
    throw NumericalError("s_nu: zero table too short for the requested tail tolerance");
  }
  return direct + (rayleigh_sigma2(params.nu_value()) - partial_sigma2);
}

ExtendedReal f_nu_prime(const DimensionParams& params, double r) {
  if (!(r > 0.0)) throw std::domain_error("f_nu_prime: argument must be > 0");
  const double nu = params.nu_value();
  const ExtendedReal rj = ratio_j(nu, r);
  if (rj.is_pole()) return ExtendedReal::pole(1);
  const double ri = ratio_i(nu, r);
  const double f = std::pow(r, params.d - 1) * (rj.raw() + ri);
  return ExtendedReal::finite(2.0 * std::pow(r, params.d - 1) + (rj.raw() - ri) * f);
}

double rayleigh_sigma2(double nu) {
  return 1.0 / (16.0 * (nu + 1.0) * (nu + 1.0) * (nu + 2.0));
}

double zero_sum_tail_bound(std::size_t terms, double r, int power) {
  const double m = static_cast<double>(terms);
  const double first_excluded = (m + 0.75) * std::numbers::pi;
  const double rho = std::pow(r / first_excluded, 4);
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  const double shifted = m - 0.25;
  if (shifted <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / ((1.0 - rho) * std::pow(std::numbers::pi, power) * (power - 1) *
                std::pow(shifted, power - 1));
}

}  // namespace twoball
