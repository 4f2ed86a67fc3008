#include <catch_amalgamated.hpp>

#include "fuzzyfuse/differential_evolution.hpp"
#include "fuzzyfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace fuzzyfuse;

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

DEConfig sphere_config(std::uint64_t seed) {
  DEConfig config;
  config.dimension = 3;
  config.lower_bound.assign(3, -5.0);
  config.upper_bound.assign(3, 5.0);
  config.seed = seed;
  return config;
}

bool in_box(std::span<const double> x, const DEConfig& config) {
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (x[d] < config.lower_bound[d] || x[d] > config.upper_bound[d]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("DEConfig validation", "[de]") {
  CHECK_NOTHROW(DEConfig::unit_box(3).validate());
  CHECK(DEConfig::unit_box(3).population_size == 15);
  CHECK(DEConfig::unit_box(3).max_generations == 100);

  auto degenerate = DEConfig::unit_box(2);
  degenerate.upper_bound[1] = degenerate.lower_bound[1];
  CHECK_THROWS_AS(degenerate.validate(), Error);

  auto small = DEConfig::unit_box(2);
  small.population_size = 3;
  CHECK_THROWS_AS(small.validate(), Error);

  auto bad_f = DEConfig::unit_box(2);
  bad_f.scale_factor = 1.5;
  CHECK_THROWS_AS(bad_f.validate(), Error);

  auto bad_cr = DEConfig::unit_box(2);
  bad_cr.crossover_rate = -0.1;
  CHECK_THROWS_AS(bad_cr.validate(), Error);

  auto short_bounds = DEConfig::unit_box(2);
  short_bounds.lower_bound.pop_back();
  CHECK_THROWS_AS(short_bounds.validate(), Error);
}

TEST_CASE("RandomSource draws stay in range", "[de]") {
  RandomSource rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.index(7) < 7);
  }
}

TEST_CASE("init_population fills the box deterministically", "[de]") {
  const auto config = DEConfig::unit_box(3);
  const Objective objective = [](std::span<const double> x) { return sphere(x); };
  RandomSource a(99), b(99);
  const DEState first = init_population(config, objective, a);
  const DEState second = init_population(config, objective, b);

  REQUIRE(first.population.size() == 15);
  for (const auto& x : first.population) {
    REQUIRE(x.size() == 3);
    CHECK(in_box(x, config));
  }
  CHECK(first.population == second.population);
  CHECK(first.fitness == second.fitness);
  CHECK(first.fitness[first.best_index] == *std::min_element(first.fitness.begin(), first.fitness.end()));
}

TEST_CASE("mutation arithmetic", "[de]") {
  const std::vector<double> lo(3, 0.0), hi(3, 1.0);
  const std::vector<double> best = {0.5, 0.5, 0.5};
  const std::vector<double> a = {0.6, 0.4, 0.5};
  const std::vector<double> b = {0.4, 0.6, 0.5};

  const auto v = mutant_vector(best, a, b, 0.5, lo, hi);
  CHECK_THAT(v[0], Catch::Matchers::WithinAbs(0.6, 1e-15));
  CHECK_THAT(v[1], Catch::Matchers::WithinAbs(0.4, 1e-15));
  CHECK_THAT(v[2], Catch::Matchers::WithinAbs(0.5, 1e-15));

  CHECK(mutant_vector(best, a, b, 0.0, lo, hi) == best);

  const std::vector<double> far = {1.0, 0.5, 0.5};
  const std::vector<double> near = {0.4, 0.5, 0.5};
  // 0.7 + 1.0 * (1.0 - 0.4) = 1.3 before clipping.
  const std::vector<double> base = {0.7, 0.5, 0.5};
  CHECK(mutant_vector(base, far, near, 1.0, lo, hi)[0] == 1.0);
}

TEST_CASE("mutation index draws avoid the best and each other", "[de][property]") {
  RandomSource rng(3);
  for (std::size_t np : {4u, 5u, 15u}) {
    for (std::size_t best = 0; best < np; ++best) {
      for (int i = 0; i < 500; ++i) {
        const auto d = draw_mutation_indices(np, best, rng);
        REQUIRE(d.best == best);
        REQUIRE(d.r1 != d.r2);
        REQUIRE(d.r1 != best);
        REQUIRE(d.r2 != best);
        REQUIRE(d.r1 < np);
        REQUIRE(d.r2 < np);
      }
    }
  }
}

TEST_CASE("binomial crossover edge rates", "[de]") {
  RandomSource rng(17);
  const std::vector<double> target = {0.0, 0.0, 0.0, 0.0, 0.0};
  const std::vector<double> mutant = {1.0, 1.0, 1.0, 1.0, 1.0};
  for (int i = 0; i < 200; ++i) {
    CHECK(crossover(target, mutant, 1.0, rng) == mutant);

    const auto trial = crossover(target, mutant, 0.0, rng);
    CHECK(std::count(trial.begin(), trial.end(), 1.0) == 1);

    const std::vector<double> t1 = {0.25}, m1 = {0.75};
    CHECK(crossover(t1, m1, 0.0, rng) == m1);
  }
}

TEST_CASE("selection keeps the trial on ties", "[de]") {
  CHECK(select(0.5, 0.3) == Survivor::Trial);
  CHECK(select(0.3, 0.5) == Survivor::Target);
  CHECK(select(0.4, 0.4) == Survivor::Trial);
  CHECK_THROWS_AS(select(std::numeric_limits<double>::quiet_NaN(), 0.1), Error);
  CHECK_THROWS_AS(select(0.1, std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("optimize minimizes the sphere", "[de]") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DEResult result = optimize(sphere, sphere_config(seed));
    REQUIRE(result.history.records.size() == 101);
    if (result.best_fitness <= 1e-3) ++solved;
    for (std::size_t g = 1; g < result.history.records.size(); ++g) {
      CHECK(result.history.records[g].best_fitness <= result.history.records[g - 1].best_fitness);
    }
    CHECK(result.best_fitness == result.history.records.back().best_fitness);
  }
  CHECK(solved >= 9);
}

TEST_CASE("optimize on a constant objective", "[de]") {
  const DEResult result = optimize([](std::span<const double>) { return 2.5; }, sphere_config(4));
  CHECK(result.best_fitness == 2.5);
  for (const auto& rec : result.history.records) CHECK(rec.best_fitness == 2.5);
}

TEST_CASE("optimize is reproducible for a fixed seed", "[de]") {
  const DEResult a = optimize(sphere, sphere_config(42));
  const DEResult b = optimize(sphere, sphere_config(42));
  REQUIRE(a.history.records.size() == b.history.records.size());
  for (std::size_t g = 0; g < a.history.records.size(); ++g) {
    CHECK(a.history.records[g].best_fitness == b.history.records[g].best_fitness);
    CHECK(a.history.records[g].best_vector == b.history.records[g].best_vector);
  }
  const DEResult c = optimize(sphere, sphere_config(43));
  CHECK(c.history.records.back().best_vector != a.history.records.back().best_vector);
}

TEST_CASE("optimize only evaluates feasible candidates and draws valid indices", "[de][property]") {
  auto config = sphere_config(8);
  config.upper_bound = {0.1, 5.0, 2.0};
  config.lower_bound = {-0.1, 4.0, -2.0};
  std::size_t evaluations = 0;
  std::size_t mutations = 0;
  bool feasible = true;
  bool distinct = true;
  DEObserver observer;
  observer.on_evaluate = [&](std::span<const double> x) {
    ++evaluations;
    feasible = feasible && in_box(x, config);
  };
  observer.on_mutation = [&](std::size_t, std::size_t, const MutationDraw& d) {
    ++mutations;
    distinct = distinct && d.r1 != d.r2 && d.r1 != d.best && d.r2 != d.best;
  };
  const DEResult result = optimize(sphere, config, &observer);
  CHECK(feasible);
  CHECK(distinct);
  CHECK(evaluations == config.population_size * (config.max_generations + 1));
  CHECK(mutations == config.population_size * config.max_generations);
  CHECK(in_box(result.best_vector, config));
  CHECK(result.final_state.fitness[result.final_state.best_index] == result.best_fitness);
}

TEST_CASE("optimize rejects a non-finite objective", "[de]") {
  try {
    optimize([](std::span<const double> x) { return x[0] > 0.0 ? std::nan("") : 1.0; },
             sphere_config(1));
    FAIL("expected NonFiniteFitness");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteFitness);
  }
}
