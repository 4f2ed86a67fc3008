#include "fuzzyfuse/ensemble.hpp"

#include "fuzzyfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace fuzzyfuse {

LinearHead::LinearHead(Matrix weights, std::vector<double> bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.rows() < 1 || weights_.cols() < 2) {
    throw Error(ErrorCode::ShapeMismatch, "head needs at least 1 input and 2 classes, got " +
                                              std::to_string(weights_.rows()) + "x" +
                                              std::to_string(weights_.cols()));
  }
  if (bias_.size() != weights_.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "bias has " + std::to_string(bias_.size()) +
                                              " entries for " + std::to_string(weights_.cols()) +
                                              " classes");
  }
  const auto w = weights_.data();
  if (!std::all_of(w.begin(), w.end(), [](double v) { return std::isfinite(v); }) ||
      !std::all_of(bias_.begin(), bias_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::NonNumericCell, "head contains non-finite values");
  }
}

LabeledSet::LabeledSet(EvidenceBatch evidence_in, std::vector<std::size_t> labels_in)
    : evidence(std::move(evidence_in)), labels(std::move(labels_in)) {
  if (labels.size() != evidence.samples()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(labels.size()) + " labels for " +
                                              std::to_string(evidence.samples()) + " samples");
  }
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double total = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

Matrix ensemble_forward(const EvidenceBatch& evidence, const SugenoMeasure& measure,
                        const LinearHead& head) {
  if (evidence.dimensions() != head.inputs()) {
    throw Error(ErrorCode::ShapeMismatch, "evidence has " + std::to_string(evidence.dimensions()) +
                                              " features but the head expects " +
                                              std::to_string(head.inputs()));
  }
  const Matrix fused = choquet_aggregate(evidence, measure);
  const std::size_t classes = head.classes();
  const Matrix& w = head.weights();
  Matrix out(fused.rows(), classes);
  std::vector<double> logits(classes);
  for (std::size_t r = 0; r < fused.rows(); ++r) {
    std::copy(head.bias().begin(), head.bias().end(), logits.begin());
    const auto x = fused.row(r);
    for (std::size_t m = 0; m < x.size(); ++m) {
      const auto wm = w.row(m);
      for (std::size_t c = 0; c < classes; ++c) logits[c] += x[m] * wm[c];
    }
    const auto p = softmax(logits);
    std::copy(p.begin(), p.end(), out.row(r).begin());
  }
  return out;
}

double cross_entropy(const Matrix& probabilities, std::span<const std::size_t> labels) {
  if (labels.size() != probabilities.rows()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(labels.size()) + " labels for " +
                                              std::to_string(probabilities.rows()) + " rows");
  }
  if (labels.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] >= probabilities.cols()) {
      throw Error(ErrorCode::IndexOutOfRange, "label " + std::to_string(labels[r]) + " at row " +
                                                  std::to_string(r) + " with " +
                                                  std::to_string(probabilities.cols()) + " classes");
    }
    total -= std::log(std::max(probabilities(r, labels[r]), kProbabilityFloor));
  }
  return total / static_cast<double>(labels.size());
}

SugenoMeasure measure_from_candidate(std::span<const double> candidate) {
  if (candidate.size() == 1) return SugenoMeasure(DensityVector({1.0}));
  std::vector<double> g(candidate.begin(), candidate.end());
  for (double& v : g) v = std::clamp(v, kDensityFloor, kDensityCeiling);
  return SugenoMeasure(DensityVector(std::move(g)));
}

double candidate_loss(std::span<const double> candidate, const LabeledSet& validation,
                      const LinearHead& head) {
  const SugenoMeasure measure = measure_from_candidate(candidate);
  return cross_entropy(ensemble_forward(validation.evidence, measure, head), validation.labels);
}

FittedEnsemble fit_densities(const LabeledSet& validation, const LinearHead& head,
                             const DEConfig& de_config, std::vector<std::string> criteria) {
  const std::size_t n = validation.evidence.criteria();
  if (de_config.dimension != n) {
    throw Error(ErrorCode::ShapeMismatch, "DE dimension " + std::to_string(de_config.dimension) +
                                              " does not match " + std::to_string(n) + " criteria");
  }
  if (validation.evidence.dimensions() != head.inputs()) {
    throw Error(ErrorCode::ShapeMismatch, "evidence has " +
                                              std::to_string(validation.evidence.dimensions()) +
                                              " features but the head expects " +
                                              std::to_string(head.inputs()));
  }
  de_config.validate();
  for (std::size_t d = 0; d < n; ++d) {
    if (de_config.lower_bound[d] < 0.0 || de_config.upper_bound[d] > 1.0) {
      throw Error(ErrorCode::InvalidConfig, "density bounds must lie within [0, 1]");
    }
  }
  if (criteria.empty()) {
    for (std::size_t i = 0; i < n; ++i) criteria.push_back("criterion_" + std::to_string(i));
  }
  if (criteria.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(criteria.size()) + " names for " +
                                              std::to_string(n) + " criteria");
  }

  DEResult run = optimize(
      [&](std::span<const double> x) { return candidate_loss(x, validation, head); }, de_config);

  return FittedEnsemble{measure_from_candidate(run.best_vector), head, std::move(criteria),
                        FitMetadata{de_config, run.best_fitness, std::move(run.history)}};
}

std::vector<std::size_t> argmax_rows(const Matrix& probabilities) {
  std::vector<std::size_t> out(probabilities.rows());
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto row = probabilities.row(r);
    out[r] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

std::vector<std::size_t> predict(const EvidenceBatch& evidence, const FittedEnsemble& ensemble) {
  return argmax_rows(ensemble_forward(evidence, ensemble.measure, ensemble.head));
}

}  // namespace fuzzyfuse
