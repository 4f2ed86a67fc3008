#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace fuzzyfuse {

/// Settings for DE/best/1/bin over a box.
struct DEConfig {
  std::size_t dimension = 0;
  std::size_t population_size = 15;
  double scale_factor = 0.5;    // F
  double crossover_rate = 0.9;  // CPr
  std::vector<double> lower_bound;
  std::vector<double> upper_bound;
  std::size_t max_generations = 100;
  std::uint64_t seed = 0;

  /// [0, 1]^dimension with the remaining fields at their defaults.
  static DEConfig unit_box(std::size_t dimension);

  /// Throws Error(InvalidConfig) on a malformed configuration.
  void validate() const;
};

/// Seeded 64-bit generator with platform-independent draws.
///
/// Draw order inside optimize(): the initial population individual by
/// individual (coordinates in order), then for every target in a
/// generation r1, r2, j_rand and D crossover uniforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0, by rejection.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

using Objective = std::function<double(std::span<const double>)>;

struct DEState {
  std::size_t generation = 0;
  std::vector<std::vector<double>> population;
  std::vector<double> fitness;
  std::size_t best_index = 0;
};

struct GenerationRecord {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  std::vector<double> best_vector;
};

struct DEHistory {
  std::vector<GenerationRecord> records;
};

/// Indices used for one mutation: the base (population best) and the
/// difference pair. r1, r2 and best are pairwise distinct.
struct MutationDraw {
  std::size_t best = 0;
  std::size_t r1 = 0;
  std::size_t r2 = 0;
};

struct Mutant {
  std::vector<double> vector;
  MutationDraw draw;
};

enum class Survivor { Target, Trial };

/// Lowest-fitness index; ties resolve to the lowest index.
std::size_t best_index_of(std::span<const double> fitness);

DEState init_population(const DEConfig& config, const Objective& objective, RandomSource& rng);

/// Draws r1 != r2, both different from best, uniformly from [0, np).
MutationDraw draw_mutation_indices(std::size_t np, std::size_t best, RandomSource& rng);

/// best + F (a - b), clipped coordinate-wise into [lower, upper].
std::vector<double> mutant_vector(std::span<const double> best, std::span<const double> a,
                                  std::span<const double> b, double scale_factor,
                                  std::span<const double> lower, std::span<const double> upper);

/// DE/best/1 mutant for target `target`. The target itself may coincide with
/// r1 or r2; only the best vector is excluded from the difference pair.
Mutant mutate(const DEState& state, std::size_t target, const DEConfig& config, RandomSource& rng);

/// Binomial crossover with one guaranteed mutant coordinate (j_rand).
std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double crossover_rate, RandomSource& rng);

/// Trial survives on ties. Throws Error(NonFiniteFitness) if either value
/// is NaN or infinite.
Survivor select(double target_fitness, double trial_fitness);

/// Optional hooks for instrumentation.
struct DEObserver {
  std::function<void(std::size_t generation, std::size_t target, const MutationDraw&)> on_mutation;
  std::function<void(std::span<const double> candidate)> on_evaluate;
};

struct DEResult {
  std::vector<double> best_vector;
  double best_fitness = 0.0;
  DEHistory history;  // max_generations + 1 records, generation 0 first
  DEState final_state;
};

/// Runs init followed by max_generations synchronous generations.
///
/// All trials of a generation are built from the generation-G population
/// before any is evaluated, so replacing the loop body with a parallel
/// evaluation would not change the result.
DEResult optimize(const Objective& objective, const DEConfig& config,
                  const DEObserver* observer = nullptr);

}  // namespace fuzzyfuse
