#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fuzzyfuse {

/// C x C counts; rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);
  static ConfusionMatrix from_counts(const std::vector<std::vector<std::uint64_t>>& counts);

  std::size_t classes() const noexcept { return classes_; }
  std::uint64_t operator()(std::size_t truth, std::size_t predicted) const noexcept {
    return counts_[truth * classes_ + predicted];
  }
  void add(std::size_t truth, std::size_t predicted, std::uint64_t count = 1);

  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t row_sum(std::size_t truth) const noexcept;
  std::uint64_t column_sum(std::size_t predicted) const noexcept;

 private:
  std::size_t classes_;
  std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion_matrix(std::span<const std::size_t> predictions,
                                 std::span<const std::size_t> labels, std::size_t classes);

/// One-vs-rest metrics for a class. A metric whose denominator is zero is
/// left empty instead of being reported as 0.
///
/// `auc_paper` is the closed form (recall + specificity) / 2, i.e. the
/// balanced accuracy of the one-vs-rest split. It is not the area under a
/// threshold-swept ROC curve.
struct ClassMetrics {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> f1;
  std::optional<double> auc_paper;
  std::optional<double> mcc;
};

ClassMetrics class_metrics(const ConfusionMatrix& cm, std::size_t class_index);

/// Macro (unweighted) averages over classes. A macro value is empty if the
/// metric is undefined for any class.
struct MetricsReport {
  std::optional<double> accuracy;  // trace / total
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> f1;
  std::optional<double> auc_paper;
  std::optional<double> mcc_macro;       // mean of per-class MCC
  std::optional<double> mcc_multiclass;  // computed from the full matrix
  std::vector<ClassMetrics> per_class;
};

MetricsReport macro_metrics(const ConfusionMatrix& cm);

/// Collapses a C-class matrix to positive-class-vs-rest; class 0 of the
/// result is `positive`, class 1 everything else.
ConfusionMatrix one_vs_rest(const ConfusionMatrix& cm, std::size_t positive);

}  // namespace fuzzyfuse
