#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fuzzyfuse {

/// Fuzzy densities g_i: the measure of each singleton criterion.
///
/// With two or more criteria every density must be finite and strictly
/// inside (0, 1). A single criterion carries the whole measure, so its
/// density must be exactly 1.
class DensityVector {
 public:
  explicit DensityVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double sum() const noexcept;

 private:
  std::vector<double> values_;
};

/// Solves 1 + lambda = prod(1 + lambda * g_i) for the unique admissible
/// lambda > -1.
///
/// Returns exactly 0 when the densities sum to 1 (within 1e-12) or when
/// there is a single criterion. Otherwise the nonzero root is bracketed
/// (in (-1, 0) when the sum exceeds 1, in (0, inf) when it falls short) and
/// refined with a safeguarded Newton/bisection iteration.
/// Throws Error(NoAdmissibleLambda) if no bracket can be established.
double solve_lambda(const DensityVector& densities);

/// |prod(1 + lambda g_i) - (1 + lambda)|
double lambda_residual(std::span<const double> densities, double lambda) noexcept;

/// A Sugeno lambda-measure: densities plus the lambda solved from them.
class SugenoMeasure {
 public:
  explicit SugenoMeasure(DensityVector densities);

  // Trusts the caller's lambda; used when reloading a fitted model.
  SugenoMeasure(DensityVector densities, double lambda);

  const DensityVector& densities() const noexcept { return densities_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return densities_.size(); }

 private:
  DensityVector densities_;
  double lambda_;
};

/// Union of two disjoint coalitions under the lambda rule.
inline double sugeno_union(double a, double b, double lambda) noexcept {
  return a + b + lambda * a * b;
}

/// Measure of a set of criterion indices, folded in ascending index order.
/// The empty set has measure 0. Indices must be distinct and < N.
double measure_of_subset(const SugenoMeasure& measure, std::span<const std::size_t> subset);

}  // namespace fuzzyfuse
