#pragma once

#include "fuzzyfuse/choquet.hpp"
#include "fuzzyfuse/ensemble.hpp"
#include "fuzzyfuse/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace fixtures {

// Three criteria over M >= C feature columns. The middle criterion carries
// a clean class signal (3 + U[0, 0.5) on the label's column, U[0, 0.5)
// elsewhere) that the head separates perfectly; the outer two are
// label-independent U[0, 3.5) noise. The head reads column c as the logit
// of class c with weight 2 and ignores the extra columns.
struct SeparableProblem {
  fuzzyfuse::LabeledSet validation;
  fuzzyfuse::LinearHead head;
};

inline SeparableProblem separable_problem(std::size_t samples, std::size_t features,
                                          std::size_t classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> small(0.0, 0.5);
  std::uniform_real_distribution<double> noise(0.0, 3.5);

  std::vector<std::size_t> labels(samples);
  std::vector<fuzzyfuse::Matrix> evidence(3, fuzzyfuse::Matrix(samples, features));
  for (std::size_t r = 0; r < samples; ++r) {
    labels[r] = r % classes;
    for (std::size_t c = 0; c < features; ++c) {
      evidence[0](r, c) = noise(rng);
      evidence[1](r, c) = small(rng) + (c == labels[r] ? 3.0 : 0.0);
      evidence[2](r, c) = noise(rng);
    }
  }

  fuzzyfuse::Matrix weights(features, classes);
  for (std::size_t c = 0; c < classes; ++c) weights(c, c) = 2.0;
  return {fuzzyfuse::LabeledSet(fuzzyfuse::EvidenceBatch(std::move(evidence)), std::move(labels)),
          fuzzyfuse::LinearHead(std::move(weights), std::vector<double>(classes, 0.0))};
}

}  // namespace fixtures
