#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace twoball {

/// Bessel order stored as the integer 2*nu. Orders nu = d/2 - 1 are
/// half-integers, so this keeps them exact for odd dimensions.
class Order {
 public:
  static constexpr Order from_twice(int twice_nu) { return Order(twice_nu); }
  static constexpr Order for_dimension(int d) { return Order(d - 2); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  /// Dimension d with nu = d/2 - 1.
  constexpr int dimension() const { return twice_ + 2; }

  friend constexpr bool operator==(Order, Order) = default;

 private:
  constexpr explicit Order(int twice_nu) : twice_(twice_nu) {}
  int twice_;
};

struct DimensionParams {
  int d = 0;
  Order nu = Order::from_twice(0);
  /// Volume of the unit ball.
  double omega_d = 0.0;
  /// Isoperimetric constant |dB_1| / |B_1|^((d-1)/d) = d * omega_d^(1/d).
  double c_d = 0.0;

  /// Throws std::invalid_argument for d < 2.
  static DimensionParams make(int d);

  double nu_value() const { return nu.value(); }

  friend bool operator==(const DimensionParams&, const DimensionParams&) = default;
};

/// A real value or a signed pole marker. Values of f_nu and g_nu carry the
/// pole marker when the argument lies within kPoleExclusion of a positive
/// zero of J_nu.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  /// sign > 0 marks the left side of a pole (value tends to +inf).
  static ExtendedReal pole(int sign) {
    return ExtendedReal(sign >= 0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity(),
                        true);
  }

  bool is_pole() const { return pole_; }
  bool is_finite() const { return !pole_; }
  /// Throws PoleError when pole-tagged.
  double value() const;
  /// +-inf for poles.
  double raw() const { return value_; }
  int sign() const { return value_ > 0 ? 1 : (value_ < 0 ? -1 : 0); }

 private:
  ExtendedReal(double v, bool pole) : value_(v), pole_(pole) {}
  double value_;
  bool pole_;
};

/// Absolute distance to a zero of J_nu inside which ratio_j, f_nu, g_nu and
/// f_nu_prime return a pole marker.
inline constexpr double kPoleExclusion = 1e-8;

// Bessel functions of real order nu >= 0 and argument r >= 0. Relative error
// below 1e-12 for r <= 50 away from zeros of J_nu; beyond r = 50 the Hankel
// asymptotic expansion is used. Both throw std::domain_error for r < 0 or
// nu < 0.
double bessel_j(double nu, double r);
double bessel_i(double nu, double r);

/// J_{nu+1}(r) / J_nu(r) by continued fraction.
ExtendedReal ratio_j(double nu, double r);
/// I_{nu+1}(r) / I_nu(r), in [0, 1) for r >= 0.
double ratio_i(double nu, double r);

/// f_nu(r) = r^(d-1) [J_{nu+1}/J_nu + I_{nu+1}/I_nu](r).
ExtendedReal f_nu(const DimensionParams& params, double r);
/// g_nu(r) = r^(1-d) [J_{nu+1}/J_nu - I_{nu+1}/I_nu](r) = 4 r^(4-d) S_nu(r), r > 0.
ExtendedReal g_nu(const DimensionParams& params, double r);
/// S_nu(r) = sum_m 1/(j_{nu,m}^4 - r^4) on [0, k_nu]. Throws PoleError
/// within kPoleExclusion of j_{nu,1} and std::domain_error outside [0, k_nu].
double s_nu(const DimensionParams& params, double r);
/// f_nu'(r) = 2 r^(d-1) + (J_{nu+1}/J_nu - I_{nu+1}/I_nu)(r) f_nu(r), r > 0.
ExtendedReal f_nu_prime(const DimensionParams& params, double r);

/// Positive zeros of J_nu and the first zero of f_nu for one order,
/// computed once and shared read-only.
struct BesselZeroTable {
  Order nu = Order::from_twice(0);
  /// zeros[m-1] = j_{nu,m}.
  std::vector<double> zeros;
  /// First positive zero of f_nu for d = 2 nu + 2.
  double k_nu = 0.0;
  /// Zeros located by bisection on sign changes of J_nu; the rest are
  /// Newton-refined McMahon estimates.
  std::size_t bisected = 0;
};

/// Thread-safe; the table is built on first use and never modified.
const BesselZeroTable& zero_table(Order nu);

/// First `count` positive zeros of J_nu (count may exceed the cached table).
std::vector<double> bessel_zeros(Order nu, std::size_t count);

/// McMahon asymptotic estimate of j_{nu,m}.
double mcmahon_zero(double nu, int m);

/// Closed-form Rayleigh sum sum_m j_{nu,m}^-4 = 1 / (16 (nu+1)^2 (nu+2)).
double rayleigh_sigma2(double nu);

/// Upper bound for sum_{m>terms} j_{nu,m}^-power / (1 - r^4/j_{nu,m}^4),
/// valid for every nu >= 0 through j_{nu,m} > (m - 1/4) pi. power = 4 bounds
/// the tail of S_nu(r); power = 2 with r = 0 the tail of sum 1/j^2.
double zero_sum_tail_bound(std::size_t terms, double r, int power);

}  // namespace twoball
