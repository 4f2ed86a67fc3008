#pragma once

#include "fuzzyfuse/fuzzy_measure.hpp"
#include "fuzzyfuse/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fuzzyfuse {

/// N aligned evidence matrices, one per criterion, all B x M.
/// Criterion i is the i-th matrix, matching density i of the measure.
class EvidenceBatch {
 public:
  explicit EvidenceBatch(std::vector<Matrix> matrices);

  std::size_t criteria() const noexcept { return matrices_.size(); }
  std::size_t samples() const noexcept { return matrices_.front().rows(); }
  std::size_t dimensions() const noexcept { return matrices_.front().cols(); }

  const Matrix& operator[](std::size_t criterion) const noexcept { return matrices_[criterion]; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }

 private:
  std::vector<Matrix> matrices_;
};

/// Choquet integral of every (sample, dimension) position across the
/// criteria.
///
/// At each position the criterion values are ordered descending (ties keep
/// the lower criterion index first), the densities are gathered in that
/// order, and the cumulative coalition measures are grown with the lambda
/// rule. The last coalition is the full set and its measure is pinned to 1.
/// The output is sum_k h_(k) * (G_k - G_(k-1)).
///
/// Throws Error(ShapeMismatch) if the criterion count differs from the
/// measure's.
Matrix choquet_aggregate(const EvidenceBatch& evidence, const SugenoMeasure& measure);

/// Reference Choquet integral of one position, evaluated by asking the
/// measure for each top-k coalition explicitly. Intended for tests; limited
/// to N <= 12.
double choquet_oracle(std::span<const double> values, const SugenoMeasure& measure);

}  // namespace fuzzyfuse
