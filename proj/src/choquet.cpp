#include "fuzzyfuse/choquet.hpp"

#include "fuzzyfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace fuzzyfuse {

namespace {

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

EvidenceBatch::EvidenceBatch(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw Error(ErrorCode::ShapeMismatch, "evidence batch has no criteria");
  const Matrix& first = matrices_.front();
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    if (!matrices_[i].same_shape(first)) {
      throw Error(ErrorCode::ShapeMismatch, "criterion " + std::to_string(i) + " is " +
                                                shape_of(matrices_[i]) + ", criterion 0 is " +
                                                shape_of(first));
    }
    const auto cells = matrices_[i].data();
    const auto bad = std::find_if(cells.begin(), cells.end(), [](double v) { return !std::isfinite(v); });
    if (bad != cells.end()) {
      const auto offset = static_cast<std::size_t>(bad - cells.begin());
      throw Error(ErrorCode::NonNumericCell,
                  "criterion " + std::to_string(i) + " has a non-finite value at row " +
                      std::to_string(offset / first.cols()) + ", column " +
                      std::to_string(offset % first.cols()));
    }
  }
}

Matrix choquet_aggregate(const EvidenceBatch& evidence, const SugenoMeasure& measure) {
  const std::size_t n = evidence.criteria();
  if (n != measure.size()) {
    throw Error(ErrorCode::ShapeMismatch, "evidence has " + std::to_string(n) +
                                              " criteria but the measure has " +
                                              std::to_string(measure.size()) + " densities");
  }
  const std::size_t rows = evidence.samples();
  const std::size_t cols = evidence.dimensions();
  const double lambda = measure.lambda();
  const auto densities = measure.densities().values();

  Matrix out(rows, cols);
  std::vector<const double*> sources(n);
  for (std::size_t i = 0; i < n; ++i) sources[i] = evidence[i].data().data();

  std::vector<std::size_t> order(n);
  std::vector<double> values(n);
  const std::size_t cells = rows * cols;
  auto dest = out.data();
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t i = 0; i < n; ++i) values[i] = sources[i][cell];

    // Insertion sort, descending; equal values keep ascending criterion order.
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i;
      while (j > 0 && values[order[j - 1]] < values[i]) {
        order[j] = order[j - 1];
        --j;
      }
      order[j] = i;
    }

    double previous = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = densities[order[k]];
      const double current = (k + 1 == n) ? 1.0 : (k == 0 ? g : previous + g + lambda * previous * g);
      total += values[order[k]] * (current - previous);
      previous = current;
    }
    dest[cell] = total;
  }
  return out;
}

double choquet_oracle(std::span<const double> values, const SugenoMeasure& measure) {
  if (values.size() != measure.size()) {
    throw Error(ErrorCode::ShapeMismatch, "got " + std::to_string(values.size()) +
                                              " values for a measure over " +
                                              std::to_string(measure.size()) + " criteria");
  }
  if (values.size() > 12) {
    throw Error(ErrorCode::ShapeMismatch, "oracle supports at most 12 criteria");
  }
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) ranked.emplace_back(values[i], i);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  double result = 0.0;
  double below = 0.0;
  std::vector<std::size_t> coalition;
  for (const auto& [value, index] : ranked) {
    coalition.push_back(index);
    const double above = measure_of_subset(measure, coalition);
    result += value * (above - below);
    below = above;
  }
  return result;
}

}  // namespace fuzzyfuse
