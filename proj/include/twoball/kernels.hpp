#pragma once

#include <cstdint>
#include <vector>

#include "twoball/rearrange.hpp"
#include "twoball/roots.hpp"

namespace twoball {

/// Constraint grid of `points` uniform values on [0, 1].
std::vector<double> uniform_grid(int points);

struct LemmaSuiteResult {
  int functions = 0;
  /// Worst split-moment residual for p = 1, 2, 3.
  double max_split_residual[3] = {0.0, 0.0, 0.0};
  double max_dagger_discrepancy = 0.0;
  /// Random restrictions on which (f|A)* exceeded f* somewhere.
  int restriction_failures = 0;

  friend bool operator==(const LemmaSuiteResult&, const LemmaSuiteResult&) = default;
};

/// Random step function number `index` of the corpus seeded by `seed`.
/// Measures are multiples of 1/64 and values multiples of 1/8, so every
/// moment identity is exact in double precision.
StepFunction random_step_function(std::uint64_t seed, std::uint64_t index);

struct ComparisonCase {
  int d;
  double r_in;
  double r_out;
};

// OpenMP-parallel kernels. Each item is independent and writes its own slot,
// so results match the serial versions bit for bit.
std::vector<DirectedValue> mu_curve(const DimensionParams& params, const std::vector<double>& a_values,
                                    const RootOptions& options = {});
std::vector<double> f_curve(const DimensionParams& params, const std::vector<double>& r_values);
LemmaSuiteResult lemma_suite(int count, std::uint64_t seed);
std::vector<ComparisonResult> comparison_sweep(const std::vector<ComparisonCase>& cases, int quadrature_n = 4096,
                                               int samples = 257);

namespace reference {
std::vector<DirectedValue> mu_curve(const DimensionParams& params, const std::vector<double>& a_values,
                                    const RootOptions& options = {});
std::vector<double> f_curve(const DimensionParams& params, const std::vector<double>& r_values);
LemmaSuiteResult lemma_suite(int count, std::uint64_t seed);
std::vector<ComparisonResult> comparison_sweep(const std::vector<ComparisonCase>& cases, int quadrature_n = 4096,
                                               int samples = 257);
}  // namespace reference

}  // namespace twoball
