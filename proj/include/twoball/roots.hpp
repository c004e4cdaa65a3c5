#pragma once

#include "twoball/directed_value.hpp"
#include "twoball/special_functions.hpp"

namespace twoball {

struct RootOptions {
  /// Bisection stops once the bracket is narrower than this.
  double abs_tol = 1e-12;
  /// Relative widening applied to each side of the final bracket.
  double inflation = 2.5e-10;

  friend bool operator==(const RootOptions&, const RootOptions&) = default;
};

/// Enclosures of the spectral constants of one dimension.
struct SpectralConstants {
  DimensionParams params;
  DirectedValue j1;  ///< j_{nu,1}
  DirectedValue j2;  ///< j_{nu,2}
  DirectedValue k;   ///< k_nu
  DirectedValue aI;  ///< a_I, b(a_I) = j_nu / k_nu
  DirectedValue aS;  ///< a_S, a_S K(a_S) = j_nu / k_nu

  static SpectralConstants compute(const DimensionParams& params, const RootOptions& options = {});

  /// Outward-rounds j and k to `zero_decimals` places, recomputes a_I and a_S
  /// from the rounded values, then rounds those to `threshold_decimals`. The
  /// defaults give the three- and four-decimal constants used in the
  /// published certificate tables; every enclosure stays valid.
  SpectralConstants at_display_precision(int zero_decimals = 3, int threshold_decimals = 4) const;

  friend bool operator==(const SpectralConstants&, const SpectralConstants&) = default;
};

/// Enclosure of j_{nu,m}, with a sign change of J_nu checked at both ends.
/// Throws BracketError when the bracket does not hold a sign change.
DirectedValue bessel_zero(double nu, int m, const RootOptions& options = {});

/// Enclosure of k_nu, the zero of f_nu in (j_{nu,1}, j_{nu,2}).
DirectedValue k_nu(const DimensionParams& params, const RootOptions& options = {});

/// a_I^d = 1 - (j/k)^d, with j^-, k^+ feeding the upper endpoint.
DirectedValue a_I(const DimensionParams& params, const DirectedValue& j, const DirectedValue& k);

/// Root in [0, 1] of a K(a) = j/k, with j^-, k^+ feeding the lower endpoint.
DirectedValue a_S(const DimensionParams& params, const DirectedValue& j, const DirectedValue& k,
                  const RootOptions& options = {});

/// First positive zero k(a) of r -> f_nu(r K a) + K^d f_nu(r b). Returns
/// k_nu itself at a = 0 and a = 1.
DirectedValue k_of_a(const DimensionParams& params, double a, const RootOptions& options = {});

/// mu(a, b(a)) = k(a)^4.
DirectedValue mu(const DimensionParams& params, double a, const RootOptions& options = {});

/// Crossing point M of the first pole arcs: 2 b^d + b - 1 = 0.
struct MPoint {
  DirectedValue b;
  DirectedValue a;
  DirectedValue k;
};
MPoint m_point(const DimensionParams& params, const RootOptions& options = {});

}  // namespace twoball
