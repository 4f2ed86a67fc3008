#include "fuzzyfuse/fuzzy_measure.hpp"

#include "fuzzyfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace fuzzyfuse {

namespace {

constexpr double kSumOneTolerance = 1e-12;
constexpr double kResidualTarget = 1e-12;
constexpr int kMaxIterations = 200;
constexpr int kMaxBracketExpansions = 2000;
constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

std::string describe(std::span<const double> values) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
  os << ']';
  return os.str();
}

// f(lambda) = prod(1 + lambda g_i) - 1 - lambda has the trivial root 0.
// Dividing it out leaves
//   q(lambda) = (e_1 - 1) + e_2 lambda + e_3 lambda^2 + ... + e_N lambda^(N-1)
// where e_k are the elementary symmetric polynomials of the densities.
// Working with q avoids the cancellation in f near lambda = 0.
class ReducedPolynomial {
 public:
  explicit ReducedPolynomial(std::span<const double> g) : coeffs_(g.size()) {
    std::vector<double> e(g.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * g[i];
    }
    // coeffs_[k] multiplies lambda^k
    coeffs_[0] = std::accumulate(g.begin(), g.end(), 0.0) - 1.0;
    for (std::size_t k = 1; k < g.size(); ++k) coeffs_[k] = e[k + 1];
  }

  double operator()(double x) const noexcept {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * x + coeffs_[k];
    return v;
  }

  double derivative(double x) const noexcept {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * x + static_cast<double>(k) * coeffs_[k];
    return v;
  }

 private:
  std::vector<double> coeffs_;
};

}  // namespace

DensityVector::DensityVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidDensity, "at least one density is required");
  if (values_.size() == 1) {
    if (values_[0] != 1.0) {
      throw Error(ErrorCode::InvalidDensity,
                  "a single criterion must have density 1, got " + describe(values_));
    }
    return;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double g = values_[i];
    if (!std::isfinite(g) || g <= 0.0 || g >= 1.0) {
      throw Error(ErrorCode::InvalidDensity, "density " + std::to_string(i) +
                                                 " outside the open interval (0, 1) in " +
                                                 describe(values_));
    }
  }
}

double DensityVector::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double lambda_residual(std::span<const double> densities, double lambda) noexcept {
  double product = 1.0;
  for (double g : densities) product *= 1.0 + lambda * g;
  return std::abs(product - (1.0 + lambda));
}

double solve_lambda(const DensityVector& densities) {
  const auto g = densities.values();
  if (g.size() == 1) return 0.0;
  const double excess = densities.sum() - 1.0;
  if (std::abs(excess) <= kSumOneTolerance) return 0.0;

  const ReducedPolynomial poly(g);
  // Near -1 the polynomial coefficients cancel badly, while the product
  // form has no cancellation there; near 0 it is the other way round.
  auto q = [&](double x) {
    if (x >= -0.5) return poly(x);
    double product = 1.0;
    for (double gi : g) product *= 1.0 + x * gi;
    return (product - 1.0 - x) / x;
  };

  // Invariant: q(lo) < 0 < q(hi).
  double lo = 0.0;
  double hi = 0.0;
  if (excess > 0.0) {
    // q(0) = sum - 1 > 0 and q(-1) = -prod(1 - g_i) < 0.
    lo = -1.0;
    hi = 0.0;
  } else {
    // q(0) = sum - 1 < 0 and q grows without bound.
    lo = 0.0;
    hi = 1.0;
    int expansions = 0;
    while (q(hi) <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++expansions > kMaxBracketExpansions || !std::isfinite(hi)) {
        throw Error(ErrorCode::NoAdmissibleLambda,
                    "could not bracket a positive root for densities " + describe(g));
      }
    }
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double qx = q(x);
    if (qx == 0.0) break;
    if (qx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (std::nextafter(lo, hi) >= hi) break;

    const double slope = poly.derivative(x);
    double next = (slope != 0.0) ? x - qx / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    // Converged once the residual target is met and Newton has stopped moving.
    if (lambda_residual(g, x) <= kResidualTarget && step <= 4.0 * kEpsilon * std::abs(x)) break;
  }

  if (!std::isfinite(x) || x <= -1.0 || x == 0.0 ||
      lambda_residual(g, x) > 1e-9 * (1.0 + std::abs(x))) {
    throw Error(ErrorCode::NoAdmissibleLambda,
                "solver did not converge for densities " + describe(g));
  }
  return x;
}

SugenoMeasure::SugenoMeasure(DensityVector densities)
    : densities_(std::move(densities)), lambda_(solve_lambda(densities_)) {}

SugenoMeasure::SugenoMeasure(DensityVector densities, double lambda)
    : densities_(std::move(densities)), lambda_(lambda) {
  if (!std::isfinite(lambda_) || lambda_ <= -1.0 ||
      lambda_residual(densities_.values(), lambda_) > 1e-9 * (1.0 + std::abs(lambda_))) {
    throw Error(ErrorCode::NoAdmissibleLambda,
                "lambda " + std::to_string(lambda_) + " does not normalize densities " +
                    describe(densities_.values()));
  }
}

double measure_of_subset(const SugenoMeasure& measure, std::span<const std::size_t> subset) {
  const std::size_t n = measure.size();
  std::vector<std::size_t> members(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] >= n) {
      throw Error(ErrorCode::IndexOutOfRange, "criterion index " + std::to_string(members[k]) +
                                                  " with only " + std::to_string(n) + " criteria");
    }
    if (k > 0 && members[k] == members[k - 1]) {
      throw Error(ErrorCode::DuplicateIndex,
                  "criterion index " + std::to_string(members[k]) + " repeated in subset");
    }
  }
  double value = 0.0;
  for (std::size_t i : members) value = sugeno_union(value, measure.densities()[i], measure.lambda());
  return value;
}

}  // namespace fuzzyfuse
