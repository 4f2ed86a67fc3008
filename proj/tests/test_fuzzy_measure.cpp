#include <catch_amalgamated.hpp>

#include "fuzzyfuse/error.hpp"
#include "fuzzyfuse/fuzzy_measure.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace fuzzyfuse;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<double> kTable2 = {0.12470619, 0.29971752, 0.2989895};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidModel;
}

}  // namespace

TEST_CASE("DensityVector rejects values outside the admissible range", "[fuzzy_measure]") {
  CHECK(code_of([] { DensityVector({}); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([] { DensityVector({0.5, 0.0}); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([] { DensityVector({0.5, 1.0}); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([] { DensityVector({0.5, -0.1}); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([] { DensityVector({0.5, std::nan("")}); }) == ErrorCode::InvalidDensity);
  CHECK(code_of([] { DensityVector({0.7}); }) == ErrorCode::InvalidDensity);
  CHECK_NOTHROW(DensityVector({1.0}));
}

TEST_CASE("solve_lambda reproduces the reported lambda", "[fuzzy_measure]") {
  const double lambda = solve_lambda(DensityVector(kTable2));
  CHECK_THAT(lambda, WithinAbs(1.5253944, 1e-4));
  CHECK_THAT(lambda, WithinRel(oracle::closed_form_lambda(kTable2), 1e-12));
  CHECK(lambda_residual(kTable2, lambda) <= 1e-9 * (1.0 + std::abs(lambda)));
}

TEST_CASE("solve_lambda worked examples", "[fuzzy_measure]") {
  SECTION("additive case") { CHECK(solve_lambda(DensityVector({0.5, 0.3, 0.2})) == 0.0); }
  SECTION("three equal densities of 0.2") {
    const double expected = (-0.12 + std::sqrt(0.0272)) / 0.016;
    CHECK_THAT(expected, WithinAbs(2.80776, 1e-5));
    CHECK_THAT(solve_lambda(DensityVector({0.2, 0.2, 0.2})), WithinRel(expected, 1e-12));
  }
  SECTION("two densities of 0.6") {
    CHECK_THAT(solve_lambda(DensityVector({0.6, 0.6})), WithinRel(-5.0 / 9.0, 1e-12));
  }
  SECTION("single criterion") { CHECK(solve_lambda(DensityVector({1.0})) == 0.0); }
}

TEST_CASE("solve_lambda sign rule and residual on random densities", "[fuzzy_measure][property]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto g = oracle::random_densities(rng, size(rng), 0.01, 0.99);
    const double s = std::accumulate(g.begin(), g.end(), 0.0);
    const double lambda = solve_lambda(DensityVector(g));
    INFO("trial " << trial);
    CHECK(lambda > -1.0);
    CHECK(lambda_residual(g, lambda) <= 1e-9 * (1.0 + std::abs(lambda)));
    if (s > 1.0) CHECK(lambda < 0.0);
    if (s < 1.0) CHECK(lambda > 0.0);
    CHECK_THAT(lambda, WithinRel(oracle::bisection_lambda(g), 1e-9));
  }
}

TEST_CASE("solve_lambda handles densities near the admissible edges", "[fuzzy_measure]") {
  SECTION("tiny densities give a very large lambda") {
    const std::vector<double> g = {1e-6, 1e-6};
    const double lambda = solve_lambda(DensityVector(g));
    CHECK_THAT(lambda, WithinRel(oracle::closed_form_lambda(g), 1e-9));
  }
  SECTION("densities close to 1 push lambda towards -1") {
    const std::vector<double> g = {1.0 - 1e-6, 1.0 - 1e-6, 1.0 - 1e-6};
    const double lambda = solve_lambda(DensityVector(g));
    CHECK(lambda > -1.0);
    CHECK(lambda < -0.999999);
    CHECK(lambda_residual(g, lambda) <= 1e-9 * (1.0 + std::abs(lambda)));
  }
  SECTION("sum barely above one") {
    const std::vector<double> g = {0.5, 0.5 + 1e-10};
    const double lambda = solve_lambda(DensityVector(g));
    CHECK(lambda < 0.0);
    CHECK_THAT(lambda, WithinRel(oracle::closed_form_lambda(g), 1e-6));
  }
  SECTION("sum within 1e-12 of one is treated as additive") {
    CHECK(solve_lambda(DensityVector({0.5, 0.5 + 1e-13})) == 0.0);
  }
}

TEST_CASE("solve_lambda is invariant under permutation", "[fuzzy_measure][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = oracle::random_densities(rng, 2 + trial % 5);
    const double reference = solve_lambda(DensityVector(g));
    std::shuffle(g.begin(), g.end(), rng);
    CHECK_THAT(solve_lambda(DensityVector(g)), WithinAbs(reference, 1e-12 * (1.0 + std::abs(reference))));
  }
}

TEST_CASE("measure_of_subset examples", "[fuzzy_measure]") {
  const SugenoMeasure measure{DensityVector(kTable2)};
  const std::vector<std::size_t> none;
  CHECK(measure_of_subset(measure, none) == 0.0);

  const std::vector<std::size_t> all = {0, 1, 2};
  CHECK_THAT(measure_of_subset(measure, all), WithinAbs(1.0, 1e-6));

  const std::vector<std::size_t> inception_xception = {1, 2};
  const double hand = 0.29971752 + 0.2989895 + 1.5253944 * 0.29971752 * 0.2989895;
  CHECK_THAT(hand, WithinAbs(0.73540, 1e-5));
  CHECK_THAT(measure_of_subset(measure, inception_xception), WithinAbs(hand, 1e-6));

  for (std::size_t i = 0; i < 3; ++i) {
    const std::vector<std::size_t> single = {i};
    CHECK(measure_of_subset(measure, single) == kTable2[i]);
  }
}

TEST_CASE("measure_of_subset rejects bad indices", "[fuzzy_measure]") {
  const SugenoMeasure measure{DensityVector(kTable2)};
  const std::vector<std::size_t> out_of_range = {0, 3};
  const std::vector<std::size_t> repeated = {1, 1};
  CHECK(code_of([&] { measure_of_subset(measure, out_of_range); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { measure_of_subset(measure, repeated); }) == ErrorCode::DuplicateIndex);
}

TEST_CASE("subset measure does not depend on fold order", "[fuzzy_measure][property]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const SugenoMeasure measure{DensityVector(oracle::random_densities(rng, n))};
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) members.push_back(i);
    }
    const double ascending = measure_of_subset(measure, members);
    std::shuffle(members.begin(), members.end(), rng);
    double folded = 0.0;
    for (auto i : members) folded = sugeno_union(folded, measure.densities()[i], measure.lambda());
    CHECK_THAT(folded, WithinAbs(ascending, 1e-12));
    CHECK_THAT(ascending, WithinAbs(oracle::closed_form_measure(measure.densities().values(),
                                                                measure.lambda(), members),
                                    1e-12));
  }
}

TEST_CASE("subset measure is monotone and normalized", "[fuzzy_measure][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const SugenoMeasure measure{DensityVector(oracle::random_densities(rng, n))};
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = rng() % 3;
      if (r == 0) {
        a.push_back(i);
        b.push_back(i);
      } else if (r == 1) {
        b.push_back(i);
      }
    }
    CHECK(measure_of_subset(measure, a) <= measure_of_subset(measure, b) + 1e-12);

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    CHECK_THAT(measure_of_subset(measure, all), WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("SugenoMeasure with an explicit lambda validates it", "[fuzzy_measure]") {
  const double lambda = solve_lambda(DensityVector(kTable2));
  CHECK_NOTHROW(SugenoMeasure(DensityVector(kTable2), lambda));
  CHECK(code_of([] { SugenoMeasure(DensityVector(kTable2), 0.5); }) == ErrorCode::NoAdmissibleLambda);
  CHECK(code_of([] { SugenoMeasure(DensityVector({0.6, 0.6}), -1.0); }) ==
        ErrorCode::NoAdmissibleLambda);
}
