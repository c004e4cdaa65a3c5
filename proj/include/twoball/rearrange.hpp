#pragma once

#include <cstddef>
#include <vector>

#include "twoball/special_functions.hpp"

namespace twoball {

struct Cell {
  double measure = 0.0;
  double value = 0.0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A function known through its histogram. For rearranged outputs the cell
/// order is also the layout on [0, total_measure): cell i covers the
/// interval after cells 0..i-1.
class StepFunction {
 public:
  StepFunction() = default;
  /// Throws std::invalid_argument for empty input or non-positive measures.
  explicit StepFunction(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  double total_measure() const { return total_; }
  /// Value at s in [0, total_measure) under the layout order.
  double at(double s) const;
  /// Left endpoints of the cells under the layout order, plus the total.
  std::vector<double> breakpoints() const;
  /// Integral of value^p.
  double moment(int p) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<Cell> cells_;
  double total_ = 0.0;
};

/// Measure of {f > t}.
double distribution(const StepFunction& f, double t);
/// f*: cells sorted by decreasing value, equal values merged.
StepFunction decreasing_rearrangement(const StepFunction& f);
/// f-dagger(s) = (f+)*(s) - (f-)*(|omega| - s), laid out on [0, |omega|).
StepFunction talenti_dagger(const StepFunction& f);
/// sup |f*(s) - f-dagger(s)| over the open sub-intervals of both layouts.
double check_dagger_equals_star(const StepFunction& f);

/// |int_0^split (f-dagger)^p + (-1)^p int_0^{|omega|-split} ((-f)-dagger)^p - int f^p|.
/// Throws std::invalid_argument for split outside [0, |omega|] or p < 1.
double split_moment_identity(const StepFunction& f, double split, int p);

struct RestrictionComparison {
  /// Left endpoints of the merged sub-intervals of [0, |A|).
  std::vector<double> s;
  std::vector<double> lhs;  ///< (f restricted to A)*
  std::vector<double> rhs;  ///< f* on [0, |A|)
  bool holds() const;
};
/// Compares the rearrangement of f on the union of the selected cells with
/// f* on a set of the same measure. Throws std::out_of_range on a bad index.
RestrictionComparison hardy_littlewood_restriction(const StepFunction& f,
                                                   const std::vector<std::size_t>& subset_cells);

enum class RadialDomain { Ball, Annulus };

struct RadialProfile {
  RadialDomain domain = RadialDomain::Ball;
  int d = 0;
  double r_in = 0.0;  ///< 0 for balls
  double r_out = 0.0;
  std::vector<double> radii;
  std::vector<double> values;
};

struct PoissonSolution {
  RadialProfile profile;
  /// Richardson estimate |S_n - S_{n/2}| / 15, maximised over the grid.
  double error_estimate = 0.0;
};

/// Solves -Delta v = f* on the ball of measure omega_measure with v = 0 on
/// the boundary by composite Simpson quadrature of
/// v(rho) = int_rho^R F(omega_d t^d) / (d omega_d t^(d-1)) dt, F(m) = int_0^m f*.
/// `fstar` is read in layout order and must be nonincreasing; its total
/// measure must equal omega_measure. The profile has panels + 1 nodes.
PoissonSolution radial_poisson(const StepFunction& fstar, const DimensionParams& params,
                               double omega_measure, int panels = 4096);

/// u = -f r^2 / (2d) + A + B Phi(r) with Phi = r^(2-d) (log r for d = 2),
/// vanishing on both spheres of the annulus r_in < |x| < r_out.
struct AnnulusSolution {
  DimensionParams params;
  double r_in = 0.0;
  double r_out = 0.0;
  double f = 0.0;
  double A = 0.0;
  double B = 0.0;

  double value(double r) const;
  double derivative(double r) const;
  double argmax() const;
  RadialProfile profile(int points) const;
  /// Decreasing rearrangement u*(rho) on the ball of measure |annulus|,
  /// found from level-set measures.
  double rearranged(double rho) const;
  /// Radius of the ball with the annulus's measure.
  double rearranged_radius() const;
};

/// Throws std::invalid_argument unless 0 < r_in < r_out and f > 0.
AnnulusSolution annulus_solution(const DimensionParams& params, double r_in, double r_out, double f);

struct HoleGeometry {
  double omega_measure = 0.0;
  double hole_measure = 0.0;
  double kappa = 0.0;
  static HoleGeometry make(int d, double omega_measure, double hole_measure);
};

struct ComparisonResult {
  double max_violation = 0.0;  ///< max of u* - kappa^2 v over the grid
  double kappa = 0.0;
  double min_margin = 0.0;     ///< min of kappa^2 v - u*
  double quadrature_error = 0.0;
  double classical_excess = 0.0;  ///< max of kappa^2 v - v, never positive
};

/// u from annulus_solution with f = 1, v from radial_poisson with f* = 1 on
/// the ball of the same measure, kappa from the inner ball as hole.
/// Compares on `samples` evenly spaced radii of the rearranged ball.
ComparisonResult verify_comparison(const DimensionParams& params, double r_in, double r_out,
                                   int quadrature_n = 4096, int samples = 257);

}  // namespace twoball
