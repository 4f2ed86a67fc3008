#include "fuzzyfuse/differential_evolution.hpp"

#include "fuzzyfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fuzzyfuse {

namespace {

double evaluate(const Objective& objective, std::span<const double> x, const DEObserver* observer) {
  if (observer && observer->on_evaluate) observer->on_evaluate(x);
  const double value = objective(x);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFiniteFitness, "objective returned a non-finite value");
  }
  return value;
}

DEState init_population(const DEConfig& config, const Objective& objective, RandomSource& rng,
                        const DEObserver* observer) {
  config.validate();
  DEState state;
  state.population.resize(config.population_size, std::vector<double>(config.dimension));
  for (auto& individual : state.population) {
    for (std::size_t d = 0; d < config.dimension; ++d) {
      const double lo = config.lower_bound[d];
      const double hi = config.upper_bound[d];
      individual[d] = std::min(hi, lo + (hi - lo) * rng.uniform());
    }
  }
  state.fitness.reserve(config.population_size);
  for (const auto& individual : state.population) {
    state.fitness.push_back(evaluate(objective, individual, observer));
  }
  state.best_index = best_index_of(state.fitness);
  return state;
}

GenerationRecord record_of(const DEState& state) {
  return {state.generation, state.fitness[state.best_index], state.population[state.best_index]};
}

}  // namespace

DEConfig DEConfig::unit_box(std::size_t dimension) {
  DEConfig config;
  config.dimension = dimension;
  config.lower_bound.assign(dimension, 0.0);
  config.upper_bound.assign(dimension, 1.0);
  return config;
}

void DEConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (dimension == 0) fail("dimension must be positive");
  if (population_size < 4) fail("population size must be at least 4");
  if (!(scale_factor >= 0.0 && scale_factor <= 1.0)) fail("scale factor F must lie in [0, 1]");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover rate must lie in [0, 1]");
  if (max_generations == 0) fail("max generations must be positive");
  if (lower_bound.size() != dimension || upper_bound.size() != dimension) {
    fail("bounds must have length " + std::to_string(dimension));
  }
  for (std::size_t d = 0; d < dimension; ++d) {
    if (!std::isfinite(lower_bound[d]) || !std::isfinite(upper_bound[d]) ||
        !(lower_bound[d] < upper_bound[d])) {
      fail("bound " + std::to_string(d) + " is not a finite interval with lower < upper");
    }
  }
}

std::size_t RandomSource::index(std::size_t n) {
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % range);
}

std::size_t best_index_of(std::span<const double> fitness) {
  return static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
}

DEState init_population(const DEConfig& config, const Objective& objective, RandomSource& rng) {
  return init_population(config, objective, rng, nullptr);
}

MutationDraw draw_mutation_indices(std::size_t np, std::size_t best, RandomSource& rng) {
  if (np < 3 || best >= np) {
    throw Error(ErrorCode::InvalidConfig, "mutation needs three distinct individuals");
  }
  MutationDraw draw{best, best, best};
  while (draw.r1 == best) draw.r1 = rng.index(np);
  while (draw.r2 == best || draw.r2 == draw.r1) draw.r2 = rng.index(np);
  return draw;
}

std::vector<double> mutant_vector(std::span<const double> best, std::span<const double> a,
                                  std::span<const double> b, double scale_factor,
                                  std::span<const double> lower, std::span<const double> upper) {
  std::vector<double> v(best.size());
  for (std::size_t d = 0; d < v.size(); ++d) {
    v[d] = std::clamp(best[d] + scale_factor * (a[d] - b[d]), lower[d], upper[d]);
  }
  return v;
}

Mutant mutate(const DEState& state, std::size_t target, const DEConfig& config, RandomSource& rng) {
  if (target >= state.population.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "target " + std::to_string(target) + " outside population");
  }
  const MutationDraw draw = draw_mutation_indices(state.population.size(), state.best_index, rng);
  return {mutant_vector(state.population[draw.best], state.population[draw.r1],
                        state.population[draw.r2], config.scale_factor, config.lower_bound,
                        config.upper_bound),
          draw};
}

std::vector<double> crossover(std::span<const double> target, std::span<const double> mutant,
                              double crossover_rate, RandomSource& rng) {
  if (target.size() != mutant.size() || target.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "crossover needs equal, non-empty vectors");
  }
  const std::size_t forced = rng.index(target.size());
  std::vector<double> trial(target.begin(), target.end());
  for (std::size_t d = 0; d < trial.size(); ++d) {
    // One uniform per coordinate, drawn even at j_rand, keeps the stream
    // position independent of the crossover outcome.
    const bool take = rng.uniform() < crossover_rate;
    if (take || d == forced) trial[d] = mutant[d];
  }
  return trial;
}

Survivor select(double target_fitness, double trial_fitness) {
  if (!std::isfinite(target_fitness) || !std::isfinite(trial_fitness)) {
    throw Error(ErrorCode::NonFiniteFitness, "selection received a non-finite fitness");
  }
  return trial_fitness <= target_fitness ? Survivor::Trial : Survivor::Target;
}

DEResult optimize(const Objective& objective, const DEConfig& config, const DEObserver* observer) {
  RandomSource rng(config.seed);
  DEState state = init_population(config, objective, rng, observer);

  DEResult result;
  result.history.records.reserve(config.max_generations + 1);
  result.history.records.push_back(record_of(state));

  const std::size_t np = config.population_size;
  std::vector<std::vector<double>> trials(np);
  std::vector<double> trial_fitness(np);
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    for (std::size_t j = 0; j < np; ++j) {
      Mutant mutant = mutate(state, j, config, rng);
      if (observer && observer->on_mutation) observer->on_mutation(state.generation, j, mutant.draw);
      trials[j] = crossover(state.population[j], mutant.vector, config.crossover_rate, rng);
    }
    for (std::size_t j = 0; j < np; ++j) trial_fitness[j] = evaluate(objective, trials[j], observer);
    for (std::size_t j = 0; j < np; ++j) {
      if (select(state.fitness[j], trial_fitness[j]) == Survivor::Trial) {
        state.population[j] = std::move(trials[j]);
        state.fitness[j] = trial_fitness[j];
      }
    }
    state.generation = gen;
    state.best_index = best_index_of(state.fitness);
    result.history.records.push_back(record_of(state));
  }

  result.best_vector = state.population[state.best_index];
  result.best_fitness = state.fitness[state.best_index];
  result.final_state = std::move(state);
  return result;
}

}  // namespace fuzzyfuse
