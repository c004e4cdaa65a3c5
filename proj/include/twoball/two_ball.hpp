#pragma once

#include "twoball/directed_value.hpp"
#include "twoball/special_functions.hpp"

namespace twoball {

/// Radii (a, b) of the two balls with a^d + b^d = 1 and the asymmetry
/// factor K = a^(d-1) / ((a^d + b^d)^((d-1)/d) + b^(d-1)).
struct TwoBallPoint {
  DimensionParams params;
  double a = 0.0;
  double b = 1.0;
  double K = 0.0;

  /// Throws std::domain_error for a outside [0, 1].
  static TwoBallPoint on_constraint(const DimensionParams& params, double a);
};

/// b = (1 - a^d)^(1/d), stable near a = 1.
double b_of_a(const DimensionParams& params, double a);
double K_of(const TwoBallPoint& point);
inline double K_of_a(const DimensionParams& params, double a) {
  return TwoBallPoint::on_constraint(params, a).K;
}

struct ConstraintDerivatives {
  double b_prime;
  double K_prime;
};
/// db/da and dK/da along the constraint; std::domain_error at a = 0 or 1.
ConstraintDerivatives derivatives(const TwoBallPoint& point);

/// F_nu(k, a) = f_nu(k K a) + K^d f_nu(k b).
ExtendedReal F_nu(const DimensionParams& params, double k, double a);

/// Enclosure of 2 (j/k)^d + j/k. The two-ball minimum can only sit at a
/// vanishing ball if its lower endpoint exceeds 1.
DirectedValue necessary_condition(const DimensionParams& params, const DirectedValue& j,
                                  const DirectedValue& k);

/// T1(a) = (a K)^d K' / K.
double t1(const TwoBallPoint& point);
/// (a K' + K) (k K)^(d-1) g_nu(k K a).
ExtendedReal g1_term(const TwoBallPoint& point, double k);
/// k_prefactor^(d-1) g_nu(k_argument b). The prefactor and argument take
/// different directed endpoints in the certificate inequalities.
ExtendedReal g2_term(const TwoBallPoint& point, double k_argument, double k_prefactor);

struct T1G1G2 {
  double t1;
  ExtendedReal g1;
  ExtendedReal g2;
};
/// G1 uses k_plus throughout; G2 uses k_minus as prefactor and k_plus inside
/// g_nu. Passing k_plus = k_minus = k gives the undirected functions.
T1G1G2 t1_g1_g2(const TwoBallPoint& point, double k_plus, double k_minus);

/// d/da F_nu(k, a) = 2 k^d T1 + T2 + T3, valid where F_nu(k, a) = 0.
struct DerivativeDecomposition {
  double t1_term;  ///< 2 k^d T1
  double t2_term;  ///< d K' K^(d-1) f_nu(k b)
  double t3_term;  ///< k a^(d-1) G_nu(a) f_nu(k K a)
  double total;
  /// 2 k^d T1 + T2 rewritten through the curve relation as
  /// -4 d (K'/K) r^(d+4) sum 1/(j^2 (j^4 - r^4)) with r = k K a. The two
  /// terms above cancel to many digits near a = 0; this form does not.
  double t12_term;
};
/// Throws PreconditionError when |F_nu(k, a)| exceeds curve_tolerance, and
/// PoleError when an argument is pole-tagged.
DerivativeDecomposition dF_da_decomposition(const DimensionParams& params, double k, double a,
                                            double curve_tolerance = 1e-6);

}  // namespace twoball
