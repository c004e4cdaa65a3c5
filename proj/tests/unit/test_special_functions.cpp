#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "twoball/errors.hpp"
#include "twoball/special_functions.hpp"

using namespace twoball;

namespace {

// Reference values from tests/oracles/freeze_values.py (mpmath, 50 digits).
struct BesselOracle {
  double nu, r, j, i;
};
const BesselOracle kBessel[] = {
    {0, 0.5, 0.93846980724081290423, 1.0634833707413235193},
    {0, 3, -0.26005195490193343762, 4.8807925858650240856},
    {0, 7.7, 0.23455913958646440641, 323.08750815676949241},
    {0, 15, -0.014224472826780773234, 339649.37329791387952},
    {0, 29, -0.14784876468298405046, 292520631785.69086627},
    {0, 45, 0.11581867067325632359, 2083414075177314816.2},
    {0.5, 0.5, 0.54097378993452809133, 0.58799308679041632549},
    {0.5, 3, 0.065008182877375778114, 4.6148229034076009479},
    {0.5, 7.7, 0.28413555862456031598, 317.49151618958847025},
    {0.5, 15, 0.13396768882243934618, 336729.88718706407554},
    {0.5, 29, -0.098326281405102760329, 291240013201.66741046},
    {0.5, 45, 0.10120783324271412176, 2077569182462564281.5},
    {1, 0.5, 0.24226845767487388638, 0.25789430539089631636},
    {1, 3, 0.33905895852593645893, 3.9533702174026093965},
    {1, 7.7, 0.18131271532458798281, 301.31235966217612997},
    {1, 15, 0.20510403861352276115, 328124.92197020639673},
    {1, 29, 0.0069342045592652512482, 287432108126.25481211},
    {1, 45, 0.028348854376424527534, 2060133462081577166.5},
    {1.5, 0.5, 0.091701699625651302638, 0.09640347383401674087},
    {1.5, 3, 0.47771821508709177155, 3.0994834567256358101},
    {1.5, 7.7, -0.0072000359216254954041, 276.25898195424017325},
    {1.5, 15, 0.16543669516213786047, 314281.22804132282366},
    {1.5, 29, 0.10744421799076803139, 281197254125.74784458},
    {1.5, 45, -0.060233578972053990948, 2031400978407840630.8},
    {2.5, 0.5, 0.0092364078193797244999, 0.0095722437863158802711},
    {2.5, 3, 0.41271003220971599344, 1.5153394466819651377},
    {2.5, 7.7, -0.28694076742519362588, 209.85814659702736379},
    {2.5, 15, -0.10088034979001177408, 273873.64157879951081},
    {2.5, 29, 0.10944120050759600496, 262150642085.21073688},
    {2.5, 45, -0.10522340517418438782, 1942142450568708239.5},
    {3.5, 0.5, 0.00066237856814594236085, 0.00068103597085793815863},
    {3.5, 3, 0.21013183859576821751, 0.57391771225569391388},
    {3.5, 7.7, -0.17912513773109763829, 139.98745818993669027},
    {3.5, 15, -0.1990634784254751185, 222990.01418172298673},
    {3.5, 29, -0.08857504548945837536, 235998867559.33220029},
    {3.5, 45, 0.048542089508255725635, 1815607372789095270.9},
};

void expect_rel(double got, double want, double rel) {
  EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << "got " << got << " want " << want;
}

const DimensionParams kD4 = DimensionParams::make(4);

}  // namespace

TEST(DimensionParams, OrderIsExactAndConstantsMatchUnitBall) {
  for (int d = 2; d <= 12; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    EXPECT_EQ(p.nu.twice(), d - 2);
    EXPECT_EQ(p.nu_value(), d / 2.0 - 1.0);
    EXPECT_EQ(p.nu.dimension(), d);
    const double omega = std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    expect_rel(p.omega_d, omega, 1e-14);
    // |dB_1| = d omega_d
    expect_rel(p.c_d, d * omega / std::pow(omega, (d - 1.0) / d), 1e-14);
  }
  EXPECT_THROW(DimensionParams::make(1), std::invalid_argument);
}

TEST(BesselJ, ValuesAtZero) {
  EXPECT_EQ(bessel_j(0, 0), 1.0);
  EXPECT_EQ(bessel_j(1, 0), 0.0);
  EXPECT_EQ(bessel_i(0, 0), 1.0);
  EXPECT_EQ(bessel_i(2, 0), 0.0);
}

TEST(BesselJ, MatchesHighPrecisionOracle) {
  for (const auto& o : kBessel) {
    SCOPED_TRACE(testing::Message() << "nu=" << o.nu << " r=" << o.r);
    expect_rel(bessel_j(o.nu, o.r), o.j, 1e-12);
    expect_rel(bessel_i(o.nu, o.r), o.i, 1e-12);
  }
  expect_rel(bessel_i(1, 1), 0.56515910399248502721, 1e-12);
}

// Above r = 50 the asymptotic expansion takes over. Its phase error is an
// absolute one, so J is checked absolutely; I relatively.
const BesselOracle kBesselLarge[] = {
    {1.0, 50.5, -0.05806287642132068648, 4.7629744925897937735e+20},
    {1.0, 60.0, 0.046598383758166317869, 5.8447515883904682813e+24},
    {1.0, 80.0, -0.05605729667571257751, 2.459659579567540863e+33},
    {1.0, 120.0, -0.011805211433001891117, 4.7347211273881961246e+50},
    {2.5, 50.5, -0.032547147339120802293, 4.5193997371103425567e+20},
    {2.5, 60.0, 0.036276530818286875105, 5.5925226694181572371e+24},
    {2.5, 80.0, 0.088988746970945345579, 2.3797745641920403166e+33},
    {2.5, 120.0, -0.043763465750106948594, 4.6318520092018164283e+50},
    {3.5, 50.5, 0.10546535886535326044, 4.2563421085942977102e+20},
    {3.5, 60.0, -0.094558348480472002323, 5.3176345773557543872e+24},
    {3.5, 80.0, -0.0031771675591129053295, 2.2916624745657915417e+33},
    {3.5, 120.0, 0.057126250677030170986, 4.5170287178322100519e+50},
};

TEST(BesselJ, AsymptoticBranchMatchesOracle) {
  for (const BesselOracle& o : kBesselLarge) {
    EXPECT_LE(std::abs(bessel_j(o.nu, o.r) - o.j), 1e-14) << o.nu << " " << o.r;
    EXPECT_LE(std::abs(bessel_i(o.nu, o.r) - o.i), 1e-14 * o.i) << o.nu << " " << o.r;
  }
}

TEST(BesselJ, VanishesAtFirstZeroOfJ1) { EXPECT_LE(std::abs(bessel_j(1, 3.8317059702)), 1e-10); }

TEST(BesselJ, RejectsNegativeArgument) {
  EXPECT_THROW(bessel_j(1, -1e-3), std::domain_error);
  EXPECT_THROW(bessel_i(1, -1e-3), std::domain_error);
}

TEST(BesselJ, HalfOrderClosedForm) {
  for (double r = 0.1; r < 30; r += 0.37) {
    const double want = std::sqrt(2.0 / (M_PI * r)) * std::sin(r);
    EXPECT_LE(std::abs(bessel_j(0.5, r) - want), 1e-12 * std::max(std::abs(want), 1e-3)) << r;
  }
}

TEST(BesselJ, ThreeTermRecurrences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.05, 30.0);
  for (int i = 0; i < 400; ++i) {
    const double r = radius(rng);
    for (double nu = 1.0; nu <= 3.5; nu += 0.5) {
      const double jm = bessel_j(nu - 1, r), j = bessel_j(nu, r), jp = bessel_j(nu + 1, r);
      EXPECT_LE(std::abs(jm + jp - 2 * nu / r * j), 1e-10 * std::max(1.0, std::abs(j))) << nu << " " << r;
      const double im = bessel_i(nu - 1, r), ii = bessel_i(nu, r), ip = bessel_i(nu + 1, r);
      EXPECT_LE(std::abs(im - ip - 2 * nu / r * ii), 1e-10 * ii) << nu << " " << r;
    }
  }
}

TEST(Ratios, MatchOracles) {
  expect_rel(ratio_j(1, 2).value(), 0.61178923443220421249, 1e-12);
  expect_rel(ratio_j(1, 0.5).value(), 0.12632277330858098603, 1e-12);
  expect_rel(ratio_i(1, 5), 0.71934058136431292685, 1e-12);
}

TEST(Ratios, SmallArgumentLimits) {
  EXPECT_LT(std::abs(ratio_j(1, 1e-9).value()), 1e-9);
  EXPECT_EQ(ratio_i(1, 0), 0.0);
}

TEST(Ratios, PoleTagAtZeroOfJ) {
  const double j11 = zero_table(Order::from_twice(2)).zeros[0];
  EXPECT_TRUE(ratio_j(1, j11).is_pole());
  EXPECT_TRUE(ratio_j(1, j11 + 5e-9).is_pole());
  EXPECT_FALSE(ratio_j(1, j11 + 1e-6).is_pole());
  EXPECT_THROW(ratio_j(1, j11).value(), PoleError);
}

TEST(Ratios, MittagLefflerSeries) {
  // 2r sum 1/(j^2 - r^2), with sum 1/j^2 = 1/(4(nu+1)) pulled out so the
  // truncated remainder sum r^2 / (j^2 (j^2 - r^2)) converges like M^-3.
  for (double nu : {1.0, 1.5, 2.5}) {
    const std::vector<double> zeros = bessel_zeros(Order::from_twice(static_cast<int>(2 * nu)), 2000);
    const double j1 = zeros.front();
    for (double r = 0.2; r < j1 - 0.05; r += 0.3) {
      double sum = 0.0;
      for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
        const double j2 = *it * *it;
        sum += r * r / (j2 * (j2 - r * r));
      }
      const double series = 2 * r * (1.0 / (4 * (nu + 1)) + sum);
      const double tail = 2 * r * 2 * r * r * zero_sum_tail_bound(zeros.size(), r, 4);
      EXPECT_LE(std::abs(ratio_j(nu, r).value() - series), 1e-10 + tail) << nu << " " << r;
    }
  }
}

TEST(RatioI, InUnitIntervalAndIncreasing) {
  double prev = -1.0;
  for (double r = 0.0; r <= 40.0; r += 0.25) {
    const double v = ratio_i(1, r);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_LT(ratio_i(1, 2), ratio_i(1, 3));
}

TEST(FNu, KnownValues) {
  EXPECT_EQ(f_nu(kD4, 0).value(), 0.0);
  expect_rel(f_nu(kD4, 2.0).value(), 8.3593332892361277664, 1e-12);
  EXPECT_LE(std::abs(f_nu(kD4, zero_table(kD4.nu).k_nu).value()), 1e-9);
}

TEST(FNu, IncreasingBetweenPoles) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const auto& z = zero_table(p.nu).zeros;
    for (int arc = 0; arc < 2; ++arc) {
      const double lo = arc == 0 ? 1e-3 : z[0] + 1e-4;
      const double hi = z[arc] - 1e-4;
      double prev = -INFINITY;
      for (int i = 0; i <= 400; ++i) {
        const double v = f_nu(p, lo + (hi - lo) * i / 400).value();
        EXPECT_GT(v, prev) << d;
        prev = v;
      }
    }
  }
}

TEST(FNu, SeriesRepresentation) {
  // f = 2 r^d sum 2 j^2 / (j^4 - r^4) = 4 r^d [1/(2d) + sum r^4 / (j^2 (j^4 - r^4))].
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const std::vector<double> z = bessel_zeros(p.nu, 2000);
    for (double t = 0.05; t < 0.98; t += 0.05) {
      const double r = t * z[0];
      const double r4 = std::pow(r, 4);
      double sum = 0.0;
      for (auto it = z.rbegin(); it != z.rend(); ++it) {
        const double j2 = *it * *it;
        sum += r4 / (j2 * (j2 * j2 - r4));
      }
      const double series = 4 * std::pow(r, d) * (1.0 / (2 * d) + sum);
      const double tail = 4 * std::pow(r, d) * r4 * zero_sum_tail_bound(z.size(), r, 6);
      EXPECT_LE(std::abs(f_nu(p, r).value() - series), 1e-9 * std::max(1.0, std::abs(series)) + tail)
          << d << " " << r;
    }
  }
}

TEST(FNu, SmallArgumentAsymptotics) {
  // (f(r) - (2/d) r^d) / r^(d+4) tends to 8 S(0) / (d (d + 4)); Richardson on h, h/2.
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const double limit = 8.0 * s_nu(p, 0.0) / (d * (d + 4.0));
    auto q = [&](double r) { return (f_nu(p, r).value() - 2.0 / d * std::pow(r, d)) / std::pow(r, d + 4); };
    double prev_err = INFINITY;
    for (double r = 0.4; r > 0.04; r *= 0.5) {
      const double rich = (16.0 * q(0.5 * r) - q(r)) / 15.0;  // error O(r^4)
      const double err = std::abs(rich - limit);
      // f - (2/d) r^d cancels to r^4 relative; its roundoff floor grows as r^-4.
      const double roundoff = 64 * std::numeric_limits<double>::epsilon() * (2.0 / d) / std::pow(0.5 * r, 4);
      EXPECT_LE(err, prev_err * 1.01 + roundoff) << d;
      prev_err = err;
    }
    EXPECT_LE(prev_err, 1e-4 * std::abs(limit)) << d;
  }
}

TEST(GNu, SignsAndOracle) {
  EXPECT_GT(g_nu(kD4, 0.05).value(), 0.0);
  const double j = zero_table(kD4.nu).zeros[0];
  const double k = zero_table(kD4.nu).k_nu;
  for (double r = j + 0.01; r < k; r += 0.05) EXPECT_LT(g_nu(kD4, r).value(), 0.0) << r;
  expect_rel(g_nu(kD4, 1.0).value(), 0.020920540385206530188, 1e-11);
  EXPECT_TRUE(g_nu(kD4, j).is_pole());
}

TEST(SNu, ZeroArgumentEqualsRayleighSum) {
  EXPECT_NEAR(rayleigh_sigma2(1.0), 1.0 / 192.0, 1e-18);
  // Brute-force sum of j^-4 with its tail bound.
  const std::vector<double> z = bessel_zeros(Order::from_twice(2), 2000);
  double sum = 0.0;
  for (auto it = z.rbegin(); it != z.rend(); ++it) sum += std::pow(*it, -4);
  const double tail = zero_sum_tail_bound(z.size(), 0.0, 4);
  EXPECT_LE(std::abs(s_nu(kD4, 0.0) - sum), tail + 1e-15);
}

TEST(SNu, NegativeAtKAndConsistentWithRatios) {
  const double k = zero_table(kD4.nu).k_nu;
  EXPECT_LT(s_nu(kD4, k), 0.0);
  const double r = 1.0;
  EXPECT_LE(std::abs(4 * r * r * r * s_nu(kD4, r) - (ratio_j(1, r).value() - ratio_i(1, r))), 1e-9);
  EXPECT_THROW(s_nu(kD4, k + 0.01), std::domain_error);
  EXPECT_THROW(s_nu(kD4, -0.01), std::domain_error);
  EXPECT_THROW(s_nu(kD4, zero_table(kD4.nu).zeros[0]), PoleError);
}

TEST(SNu, IncreasingOnBothArcs) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const double j = zero_table(p.nu).zeros[0];
    const double k = zero_table(p.nu).k_nu;
    double prev = -INFINITY;
    for (int i = 0; i <= 200; ++i) {
      const double v = s_nu(p, (j - 1e-3) * i / 200);
      EXPECT_GT(v, prev);
      prev = v;
    }
    EXPECT_GT(prev, 0.0);
    prev = -INFINITY;
    for (int i = 0; i <= 200; ++i) {
      const double v = s_nu(p, j + 1e-3 + (k - j - 1e-3) * i / 200);
      EXPECT_GT(v, prev);
      prev = v;
    }
    EXPECT_LT(prev, 0.0);
  }
}

TEST(SumInverseSquares, EqualsOneOverTwoD) {
  for (int d = 4; d <= 9; ++d) {
    const std::vector<double> z = bessel_zeros(Order::for_dimension(d), 100000);
    double sum = 0.0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) sum += 1.0 / (*it * *it);
    const double tail = zero_sum_tail_bound(z.size(), 0.0, 2);
    EXPECT_LE(sum, 1.0 / (2 * d) + 1e-14) << d;
    EXPECT_GE(sum + tail, 1.0 / (2 * d) - 1e-14) << d;
  }
}

TEST(FNuPrime, Limits) {
  const double r = 1e-3;
  expect_rel(f_nu_prime(kD4, r).value(), 2 * r * r * r, 1e-5);
  const double k = zero_table(kD4.nu).k_nu;
  expect_rel(f_nu_prime(kD4, k).value(), 2 * k * k * k, 1e-6);
}

TEST(FNuPrime, MatchesFiniteDifferences) {
  for (int d = 4; d <= 9; ++d) {
    const DimensionParams p = DimensionParams::make(d);
    const double j = zero_table(p.nu).zeros[0];
    for (double r : {0.5, 1.0, 2.0, 0.9 * j, j + 0.3, zero_table(p.nu).k_nu}) {
      const double h = 1e-5;
      const double fd = (f_nu(p, r + h).value() - f_nu(p, r - h).value()) / (2 * h);
      expect_rel(f_nu_prime(p, r).value(), fd, 1e-6);
    }
  }
}

TEST(ZeroTable, OrderedAndInterlaced) {
  for (int twice = 0; twice <= 20; ++twice) {
    const auto& z = zero_table(Order::from_twice(twice)).zeros;
    ASSERT_GE(z.size(), 256u);
    for (std::size_t i = 1; i < z.size(); ++i) EXPECT_GT(z[i] - z[i - 1], 2.5);
    const auto& next = zero_table(Order::from_twice(twice + 2)).zeros;
    EXPECT_LT(z[0], next[0]);
    EXPECT_LT(next[0], z[1]);
  }
}

TEST(ZeroTable, McMahonAgreesForLargeIndex) {
  const auto& z = zero_table(Order::from_twice(2)).zeros;
  EXPECT_NEAR(mcmahon_zero(1.0, 200), z[199], 1e-9);
}
