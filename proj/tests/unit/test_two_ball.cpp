#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "twoball/errors.hpp"
#include "twoball/roots.hpp"
#include "twoball/two_ball.hpp"

using namespace twoball;

namespace {

const DimensionParams kD4 = DimensionParams::make(4);

// mpmath oracles at d = 4, a = 0.83 (G1 and G2 with the exact k_nu).
constexpr double kB = 0.85138498499430259802;
constexpr double kK = 0.35358094044943528081;
constexpr double kKPrime = 1.718530835049076032;
constexpr double kT1 = 0.036052570791499122342;
constexpr double kG1 = 0.16297160756083678287;
constexpr double kG2 = -17.638285586016789843;
constexpr double kKnu4 = 4.6108998790490558272;

void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << "got " << got << " want " << want;
}

// 101 uniform points plus geometric clusters toward both ends.
std::vector<double> clustered_grid() {
  std::vector<double> g;
  for (int i = 1; i < 100; ++i) g.push_back(i / 100.0);
  double h = 0.5;
  for (int i = 0; i < 20; ++i, h *= 0.5) {
    g.push_back(h);
    g.push_back(1 - h);
  }
  return g;
}

}  // namespace

TEST(Constraint, BOfA) {
  EXPECT_EQ(b_of_a(kD4, 0.0), 1.0);
  EXPECT_EQ(b_of_a(kD4, 1.0), 0.0);
  expect_rel(b_of_a(kD4, 0.83), kB, 1e-14);
  EXPECT_THROW(b_of_a(kD4, -0.1), std::domain_error);
  EXPECT_THROW(b_of_a(kD4, 1.1), std::domain_error);
}

TEST(Constraint, Involution) {
  for (int d = 2; d <= 12; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    for (int i = 0; i <= 100; ++i) {
      const double a = i / 100.0;
      EXPECT_NEAR(b_of_a(p, b_of_a(p, a)), a, 1e-10) << d << " " << a;
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, a);
      EXPECT_NEAR(std::pow(pt.a, d) + std::pow(pt.b, d), 1.0, 1e-12);
    }
  }
}

TEST(Constraint, StableNearOne) {
  // 1 - a^d at a = 0.999 keeps its digits.
  const double a = 0.999;
  const double b = b_of_a(kD4, a);
  expect_rel(std::pow(b, 4), 1 - std::pow(a, 4), 1e-13);
}

TEST(KFactor, EndpointsOracleAndMonotone) {
  EXPECT_EQ(K_of_a(kD4, 1.0), 1.0);
  EXPECT_EQ(K_of_a(kD4, 0.0), 0.0);
  expect_rel(K_of_a(kD4, 0.83), kK, 1e-14);
  for (int d = 2; d <= 10; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    double prev = -1;
    for (double a : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0}) {
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, a);
      EXPECT_GE(pt.K, 0.0);
      EXPECT_LE(pt.K, 1.0);
      EXPECT_GT(pt.K, prev);
      prev = pt.K;
      expect_rel(pt.K + 1e-300, std::pow(a, d - 1) / (1 + std::pow(pt.b, d - 1)) + 1e-300, 1e-14);
    }
  }
}

TEST(Derivatives, OracleAndFiniteDifference) {
  const TwoBallPoint p = TwoBallPoint::on_constraint(kD4, 0.83);
  expect_rel(derivatives(p).K_prime, kKPrime, 1e-13);
  const double h = 1e-6;
  const TwoBallPoint mid = TwoBallPoint::on_constraint(kD4, 0.5);
  const double fd = (K_of_a(kD4, 0.5 + h) - K_of_a(kD4, 0.5 - h)) / (2 * h);
  expect_rel(derivatives(mid).K_prime, fd, 1e-6);
  const double fd_b = (b_of_a(kD4, 0.5 + h) - b_of_a(kD4, 0.5 - h)) / (2 * h);
  expect_rel(derivatives(mid).b_prime, fd_b, 1e-6);
  EXPECT_THROW(derivatives(TwoBallPoint::on_constraint(kD4, 0.0)), std::domain_error);
  EXPECT_THROW(derivatives(TwoBallPoint::on_constraint(kD4, 1.0)), std::domain_error);
}

TEST(Derivatives, Signs) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    for (double a : clustered_grid()) {
      const ConstraintDerivatives der = derivatives(TwoBallPoint::on_constraint(p, a));
      EXPECT_LT(der.b_prime, 0.0);
      EXPECT_GT(der.K_prime, 0.0);
    }
  }
}

TEST(FNuTwoVariable, VanishesAtZeroAndOnCurve) {
  EXPECT_EQ(F_nu(kD4, 4.0, 0.0).value(), 0.0);
  for (double a : {0.2, 0.5, 0.8, 0.95}) {
    const DirectedValue k = k_of_a(kD4, a);
    EXPECT_LE(std::abs(F_nu(kD4, k.mid(), a).value()), 1e-6) << a;
  }
}

TEST(FNuTwoVariable, IncreasingInK) {
  for (double a : {0.3, 0.6, 0.9}) {
    const DirectedValue k = k_of_a(kD4, a);
    double prev = -INFINITY;
    for (double t = -0.2; t <= 0.2; t += 0.02) {
      const double v = F_nu(kD4, k.mid() + t, a).value();
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(FNuTwoVariable, PositiveBetweenThresholds) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const SpectralConstants c = SpectralConstants::compute(p);
    const double kv = c.k.mid();
    for (int i = 1; i < 50; ++i) {
      const double a = c.aI.hi + (c.aS.lo - c.aI.hi) * i / 50.0;
      EXPECT_GT(F_nu(p, kv, a).raw(), 0.0) << d << " " << a;
    }
  }
}

// Points approaching a = 1 are spaced in b, the small quantity; a = 1 - b^d/d
// stops resolving b once b^d nears the double epsilon.
std::vector<double> shrinking_b(int d) {
  std::vector<double> out;
  for (double b = 0.2; std::pow(b, d) > 1e-11; b *= 0.5) out.push_back(b);
  return out;
}

TEST(FNuTwoVariable, AsymptoticNearOne) {
  // F(k, a) / (-2 k^d b^(d-1)) - 1 is O(b): it shrinks and err / b settles.
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const double kv = zero_table(p.nu).k_nu;
    double prev_err = INFINITY, prev_slope = 0.0, slope = 0.0;
    for (double bb : shrinking_b(d)) {
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, b_of_a(p, bb));
      const double ratio = F_nu(p, kv, pt.a).value() / (-2 * std::pow(kv, d) * std::pow(pt.b, d - 1));
      const double err = std::abs(ratio - 1);
      EXPECT_LT(err, prev_err) << d << " " << bb;
      prev_err = err;
      prev_slope = slope;
      slope = err / pt.b;
    }
    EXPECT_NEAR(slope, prev_slope, 0.02 * prev_slope) << d;
  }
}

TEST(FNuTwoVariable, NegativeNearZero) {
  // Near a = 0 the terms of order a^d cancel exactly because f'(k) = 2 k^(d-1)
  // at k = k_nu, leaving F / K^d = C a^(2d) + O(a^(3d)) with
  // C = 4 k^(d+4) S(k) / d^2, negative with S.
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const double kv = zero_table(p.nu).k_nu;
    const double S = s_nu(p, kv);
    EXPECT_LT(S, 0.0);
    const double C = 4 * std::pow(kv, d + 4) * S / (d * d);
    // Where the cancellation still leaves digits, the computed F follows C.
    const double a_star = std::pow(1e-3, 1.0 / d);
    const TwoBallPoint pt = TwoBallPoint::on_constraint(p, a_star);
    const double lead = F_nu(p, kv, a_star).value() / (std::pow(pt.K, d) * std::pow(a_star, 2 * d));
    EXPECT_NEAR(lead / C, 1.0, 5e-3) << d;
    // Grid search upward from there for the first sign change a0.
    double a0 = a_star;
    for (int i = 1; i <= 200; ++i) {
      const double a = a_star + (1 - a_star) * i / 200.0;
      if (F_nu(p, kv, a).value() >= 0) break;
      a0 = a;
    }
    EXPECT_GT(a0, 0.8) << d;
    for (int i = 0; i <= 50; ++i) {
      EXPECT_LT(F_nu(p, kv, a_star + (a0 - a_star) * i / 50.0).value(), 0.0) << d;
    }
  }
}

TEST(NecessaryCondition, PrintedValues) {
  const std::pair<int, double> rows[] = {{4, 1.7848}, {6, 1.7345}, {9, 1.6910}};
  for (const auto& [d, want] : rows) {
    const SpectralConstants c = SpectralConstants::compute(DimensionParams::make(d));
    const DirectedValue nc = necessary_condition(c.params, c.j1, c.k);
    EXPECT_NEAR(std::round(nc.mid() * 1e4) / 1e4, want, 1e-12) << d;
    EXPECT_GT(nc.lo, 1.0);
  }
}

TEST(T1G1G2, OracleComponents) {
  const TwoBallPoint p = TwoBallPoint::on_constraint(kD4, 0.83);
  const T1G1G2 parts = t1_g1_g2(p, kKnu4, kKnu4);
  expect_rel(parts.t1, kT1, 1e-12);
  expect_rel(parts.g1.value(), kG1, 1e-10);
  expect_rel(parts.g2.value(), kG2, 1e-10);
}

TEST(T1G1G2, T1PositiveIncreasingWithEndAsymptotic) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    double prev = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double v = t1(TwoBallPoint::on_constraint(p, i / 100.0));
      EXPECT_GT(v, prev);
      prev = v;
    }
    // T1 b / (d - 1) - 1 is O(b).
    double prev_err = INFINITY, prev_slope = 0.0, slope = 0.0;
    for (double bb : shrinking_b(d)) {
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, b_of_a(p, bb));
      const double err = std::abs(t1(pt) * pt.b / (d - 1) - 1);
      EXPECT_LT(err, prev_err) << d << " " << bb;
      prev_err = err;
      prev_slope = slope;
      slope = err / pt.b;
    }
    EXPECT_NEAR(slope, prev_slope, 0.02 * prev_slope) << d;
  }
}

TEST(T1G1G2, AlternativeFormOfT1) {
  // (a K' + K)(a K)^(d-1) + b' b^(d-1) K^d equals (aK)^d K'/K.
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    for (double a : {0.1, 0.4, 0.7, 0.95}) {
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, a);
      const ConstraintDerivatives der = derivatives(pt);
      const double alt = (a * der.K_prime + pt.K) * std::pow(a * pt.K, d - 1) +
                         der.b_prime * std::pow(pt.b, d - 1) * std::pow(pt.K, d);
      expect_rel(alt, t1(pt), 1e-10);
    }
  }
}

TEST(Decomposition, MatchesFiniteDifferenceOnCurve) {
  const DimensionParams p = DimensionParams::make(4);
  for (double a : {0.3, 0.6, 0.9}) {
    const double k = k_of_a(p, a).mid();
    const DerivativeDecomposition dec = dF_da_decomposition(p, k, a);
    const double h = 1e-6;
    const double fd = (F_nu(p, k, a + h).value() - F_nu(p, k, a - h).value()) / (2 * h);
    EXPECT_LE(std::abs(dec.total - fd), 1e-4 * std::abs(fd)) << a;
    EXPECT_DOUBLE_EQ(dec.total, dec.t1_term + dec.t2_term + dec.t3_term);
  }
}

// Central differences (h = 1e-6) of F at (k, a) taken in 50-digit arithmetic,
// k being the double k_of_a returns; see tests/oracles/freeze_values.py.
struct CurveDifference {
  int d;
  double a, k, fd;
};
const CurveDifference kCurveDifferences[] = {
    {5, 0.3, 5.267661893320529, -2.4623400527960234691e-13},
    {5, 0.6, 5.272333130116811, -0.00018511254352441819692},
    {5, 0.9, 5.673386397311196, -712.09825161375580743},
    {6, 0.3, 5.905678565030746, -6.1122169347110360485e-19},
    {6, 0.6, 5.907072009357927, -1.6832333071497389089e-6},
    {6, 0.9, 6.176017583417854, -725.26498979573718831},
    {7, 0.3, 6.529929607753823, -1.5992989865893683314e-25},
    {7, 0.6, 6.530361784632493, -6.6862296731764155704e-9},
    {7, 0.9, 6.715951245375754, -735.17152329330017119},
    {8, 0.3, 7.1435310255807565, -4.3003984428968595564e-33},
    {8, 0.6, 7.143668935103435, -1.1190529905326054381e-11},
    {8, 0.9, 7.274530092627675, -707.19394768129426884},
    {9, 0.3, 7.748589599383658, -1.1661911530948202227e-41},
    {9, 0.6, 7.748634540188348, -7.6933773074071993648e-15},
    {9, 0.9, 7.842487023083512, -627.79659436447513629},
};

TEST(Decomposition, MatchesFrozenDifferenceAllDimensions) {
  // For larger d the total is ~1e-6 of its terms at a = 0.3, beyond what a
  // double-precision difference resolves.
  for (const CurveDifference& c : kCurveDifferences) {
    const DimensionParams p = DimensionParams::make(c.d);
    EXPECT_EQ(k_of_a(p, c.a).mid(), c.k) << c.d << " " << c.a;
    const DerivativeDecomposition dec = dF_da_decomposition(p, c.k, c.a);
    EXPECT_LE(std::abs(dec.total - c.fd), 1e-4 * std::abs(c.fd)) << c.d << " " << c.a;
  }
}

TEST(Decomposition, RejectsOffCurvePoint) {
  EXPECT_THROW(dF_da_decomposition(kD4, 4.0, 0.5), PreconditionError);
}

TEST(Decomposition, SignsOnBothEnds) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const SpectralConstants c = SpectralConstants::compute(p);
    for (int i = 1; i < 20; ++i) {
      const double a = c.aI.lo * i / 20.0;
      const double k = k_of_a(p, a).mid();
      const DerivativeDecomposition dec = dF_da_decomposition(p, k, a, 1e-5);
      EXPECT_LT(dec.t12_term, 0.0) << d << " " << a;
      // The plain sum differs by d (K'/K) F(k, a), the residual of k being on
      // the curve only to its enclosure; the rest is roundoff of the terms.
      const TwoBallPoint pt = TwoBallPoint::on_constraint(p, a);
      const double residual = d * derivatives(pt).K_prime / pt.K * F_nu(p, k, a).value();
      EXPECT_LE(std::abs(dec.t1_term + dec.t2_term - dec.t12_term - residual), 1e-12 * std::abs(dec.t1_term))
          << d << " " << a;
    }
    for (int i = 1; i < 20; ++i) {
      const double a = c.aS.hi + (1 - c.aS.hi) * i / 20.0;
      const DerivativeDecomposition dec = dF_da_decomposition(p, k_of_a(p, a).mid(), a, 1e-5);
      EXPECT_GT(dec.t2_term, 0.0) << d << " " << a;
    }
  }
}
