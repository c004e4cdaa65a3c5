#include "twoball/kernels.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace twoball {

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = static_cast<double>(i) / (points - 1);
  out.back() = 1.0;
  return out;
}

StepFunction random_step_function(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_int_distribution<int> measure(1, 64);
  std::uniform_int_distribution<int> value(-16, 16);
  std::vector<Cell> cells(count(rng));
  for (Cell& c : cells) {
    c.measure = measure(rng) / 64.0;
    c.value = value(rng) / 8.0;
  }
  return StepFunction(std::move(cells));
}

namespace {

struct LemmaItem {
  double split[3];
  double dagger;
  bool restriction_ok;
};

LemmaItem lemma_item(std::uint64_t seed, std::uint64_t index) {
  const StepFunction f = random_step_function(seed, index);
  LemmaItem item{};
  const double positive = distribution(f, 0.0);
  for (int p = 1; p <= 3; ++p) item.split[p - 1] = split_moment_identity(f, positive, p);
  item.dagger = check_dagger_equals_star(f);

  // A random nonempty subset of cells, drawn from a stream apart from f's.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(index), 7u};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> subset;
  std::bernoulli_distribution pick(0.5);
  for (std::size_t i = 0; i < f.cells().size(); ++i) {
    if (pick(rng)) subset.push_back(i);
  }
  if (subset.empty()) subset.push_back(0);
  item.restriction_ok = hardy_littlewood_restriction(f, subset).holds();
  return item;
}

LemmaSuiteResult fold(const std::vector<LemmaItem>& items) {
  LemmaSuiteResult r;
  r.functions = static_cast<int>(items.size());
  for (const LemmaItem& it : items) {
    for (int p = 0; p < 3; ++p) r.max_split_residual[p] = std::max(r.max_split_residual[p], it.split[p]);
    r.max_dagger_discrepancy = std::max(r.max_dagger_discrepancy, it.dagger);
    if (!it.restriction_ok) ++r.restriction_failures;
  }
  return r;
}

ComparisonResult comparison_case(const ComparisonCase& c, int quadrature_n, int samples) {
  return verify_comparison(DimensionParams::make(c.d), c.r_in, c.r_out, quadrature_n, samples);
}

}  // namespace

std::vector<DirectedValue> mu_curve(const DimensionParams& params, const std::vector<double>& a_values,
                                    const RootOptions& options) {
  std::vector<DirectedValue> out(a_values.size());
  zero_table(params.nu);  // build the shared table before the threads start
  const long n = static_cast<long>(a_values.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = mu(params, a_values[i], options);
  return out;
}

std::vector<double> f_curve(const DimensionParams& params, const std::vector<double>& r_values) {
  std::vector<double> out(r_values.size());
  const long n = static_cast<long>(r_values.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = f_nu(params, r_values[i]).raw();
  return out;
}

LemmaSuiteResult lemma_suite(int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("lemma_suite: negative count");
  std::vector<LemmaItem> items(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < count; ++i) items[i] = lemma_item(seed, static_cast<std::uint64_t>(i));
  return fold(items);
}

std::vector<ComparisonResult> comparison_sweep(const std::vector<ComparisonCase>& cases, int quadrature_n,
                                               int samples) {
  std::vector<ComparisonResult> out(cases.size());
  const long n = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = comparison_case(cases[i], quadrature_n, samples);
  return out;
}

namespace reference {

std::vector<DirectedValue> mu_curve(const DimensionParams& params, const std::vector<double>& a_values,
                                    const RootOptions& options) {
  std::vector<DirectedValue> out;
  for (double a : a_values) out.push_back(mu(params, a, options));
  return out;
}

std::vector<double> f_curve(const DimensionParams& params, const std::vector<double>& r_values) {
  std::vector<double> out;
  for (double r : r_values) out.push_back(f_nu(params, r).raw());
  return out;
}

LemmaSuiteResult lemma_suite(int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("lemma_suite: negative count");
  std::vector<LemmaItem> items;
  for (int i = 0; i < count; ++i) items.push_back(lemma_item(seed, static_cast<std::uint64_t>(i)));
  return fold(items);
}

std::vector<ComparisonResult> comparison_sweep(const std::vector<ComparisonCase>& cases, int quadrature_n,
                                               int samples) {
  std::vector<ComparisonResult> out;
  for (const ComparisonCase& c : cases) out.push_back(comparison_case(c, quadrature_n, samples));
  return out;
}

}  // namespace reference
}  // namespace twoball
