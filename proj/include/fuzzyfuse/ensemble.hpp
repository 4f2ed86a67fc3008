#pragma once

#include "fuzzyfuse/choquet.hpp"
#include "fuzzyfuse/differential_evolution.hpp"
#include "fuzzyfuse/fuzzy_measure.hpp"
#include "fuzzyfuse/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fuzzyfuse {

/// Frozen prediction layer: logits = features * weights + bias.
class LinearHead {
 public:
  LinearHead(Matrix weights, std::vector<double> bias);

  std::size_t inputs() const noexcept { return weights_.rows(); }
  std::size_t classes() const noexcept { return weights_.cols(); }
  const Matrix& weights() const noexcept { return weights_; }
  std::span<const double> bias() const noexcept { return bias_; }

 private:
  Matrix weights_;
  std::vector<double> bias_;
};

/// Evidence for every criterion plus one class label per sample.
struct LabeledSet {
  LabeledSet(EvidenceBatch evidence, std::vector<std::size_t> labels);

  EvidenceBatch evidence;
  std::vector<std::size_t> labels;
};

struct FitMetadata {
  DEConfig de_config;
  double final_loss = 0.0;
  DEHistory history;
};

struct FittedEnsemble {
  SugenoMeasure measure;
  LinearHead head;
  std::vector<std::string> criteria;
  FitMetadata fit;
};

/// Candidate densities are clipped into this interval before a measure is
/// built from them.
inline constexpr double kDensityFloor = 1e-6;
inline constexpr double kDensityCeiling = 1.0 - 1e-6;

/// Cross-entropy clamps predicted probabilities from below at this value.
inline constexpr double kProbabilityFloor = 1e-12;

std::vector<double> softmax(std::span<const double> logits);

/// Row-wise softmax(choquet(evidence) * W + b); B x C.
Matrix ensemble_forward(const EvidenceBatch& evidence, const SugenoMeasure& measure,
                        const LinearHead& head);

/// Mean over rows of -ln(max(p[label], 1e-12)).
double cross_entropy(const Matrix& probabilities, std::span<const std::size_t> labels);

/// Maps a raw DE candidate to a measure. Coordinates are clipped into
/// [kDensityFloor, kDensityCeiling]; a single criterion always gets density 1.
SugenoMeasure measure_from_candidate(std::span<const double> candidate);

/// Validation loss of the ensemble built from one DE candidate.
double candidate_loss(std::span<const double> candidate, const LabeledSet& validation,
                      const LinearHead& head);

/// Fits per-criterion densities with DE, minimizing validation
/// cross-entropy. `criteria` names the columns; defaults are generated when
/// empty.
FittedEnsemble fit_densities(const LabeledSet& validation, const LinearHead& head,
                             const DEConfig& de_config, std::vector<std::string> criteria = {});

/// Row-wise argmax; ties go to the lowest class index.
std::vector<std::size_t> argmax_rows(const Matrix& probabilities);

std::vector<std::size_t> predict(const EvidenceBatch& evidence, const FittedEnsemble& ensemble);

}  // namespace fuzzyfuse
