#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "twoball/errors.hpp"
#include "twoball/special_functions.hpp"

namespace twoball {

namespace {

constexpr double kScanStep = 0.25;
constexpr double kScanLimit = 48.0;
constexpr std::size_t kTableSize = 256;

// Bisection on a sign change of J_nu down to adjacent doubles.
double refine_zero(double nu, double lo, double hi) {
  const bool lo_positive = bessel_j(nu, lo) > 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((bessel_j(nu, mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Newton on J_nu using J/J' = 1/(nu/x - J_{nu+1}/J_nu).
double newton_zero(double nu, double guess) {
  double x = guess;
  for (int it = 0; it < 60; ++it) {
    const ExtendedReal ratio = ratio_j(nu, x);
    if (ratio.is_pole()) return x;
    const double step = 1.0 / (nu / x - ratio.raw());
    x -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
  }
  return x;
}

// Extends `zeros` to `count` entries. Beyond the scan range, each zero is
// Newton-refined from the McMahon estimate, or from previous + pi when the
// estimate is not yet reliable.
void extend_zeros(double nu, std::vector<double>& zeros, std::size_t count) {
  while (zeros.size() < count) {
    const int m = static_cast<int>(zeros.size()) + 1;
    double guess = mcmahon_zero(nu, m);
    // Far out the truncated McMahon series is already exact to rounding.
    if (guess > 1000.0 && 4.0 * nu * nu < 0.01 * guess) {
      zeros.push_back(guess);
      continue;
    }
    if (!zeros.empty()) {
      const double spaced = zeros.back() + std::numbers::pi;
      if (!(std::abs(guess - spaced) < 0.5)) guess = spaced;
    }
    const double refined = newton_zero(nu, guess);
    if (!zeros.empty() && !(refined > zeros.back() + 1.0)) {
      throw NumericalError("bessel zero refinement collapsed onto a previous zero");
    }
    zeros.push_back(refined);
  }
}

BesselZeroTable build_table(Order order) {
  const double nu = order.value();
  BesselZeroTable table;
  table.nu = order;
  double previous_r = kScanStep;
  bool previous_positive = bessel_j(nu, previous_r) > 0.0;
  for (double r = 2.0 * kScanStep; r <= kScanLimit; r += kScanStep) {
    const bool positive = bessel_j(nu, r) > 0.0;
    if (positive != previous_positive) table.zeros.push_back(refine_zero(nu, previous_r, r));
    previous_r = r;
    previous_positive = positive;
  }
  table.bisected = table.zeros.size();
  extend_zeros(nu, table.zeros, kTableSize);

  // k_nu: the unique zero of the increasing f_nu between j_{nu,1} and j_{nu,2}.
  const DimensionParams params = DimensionParams::make(order.dimension());
  double lo = table.zeros[0] + 1e-6;
  double hi = table.zeros[1] - 1e-6;
  if (!(f_nu(params, lo).raw() < 0.0 && f_nu(params, hi).raw() > 0.0)) {
    throw BracketError("f_nu has no sign change between its first two poles");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f_nu(params, mid).raw() < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  table.k_nu = 0.5 * (lo + hi);
  return table;
}

}  // namespace

double mcmahon_zero(double nu, int m) {
  const double beta = (m + 0.5 * nu - 0.25) * std::numbers::pi;
  const double mu = 4.0 * nu * nu;
  const double e = 8.0 * beta;
  const double e2 = e * e;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e2) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e * e2 * e2) -
         64.0 * (mu - 1.0) *
             (6949.0 * mu * mu * mu - 153855.0 * mu * mu + 1585743.0 * mu - 6277237.0) /
             (105.0 * e * e2 * e2 * e2);
}

const BesselZeroTable& zero_table(Order nu) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const BesselZeroTable>> tables;
  std::lock_guard lock(mutex);
  auto it = tables.find(nu.twice());
  if (it == tables.end()) {
    it = tables.emplace(nu.twice(), std::make_unique<const BesselZeroTable>(build_table(nu))).first;
  }
  return *it->second;
}

std::vector<double> bessel_zeros(Order nu, std::size_t count) {
  const BesselZeroTable& table = zero_table(nu);
  if (count <= table.zeros.size()) {
    return {table.zeros.begin(), table.zeros.begin() + static_cast<std::ptrdiff_t>(count)};
  }
  std::vector<double> zeros = table.zeros;
  extend_zeros(nu.value(), zeros, count);
  return zeros;
}

}  // namespace twoball
