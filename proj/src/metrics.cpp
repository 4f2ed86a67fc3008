#include "fuzzyfuse/metrics.hpp"

#include "fuzzyfuse/error.hpp"

#include <cmath>
#include <string>

namespace fuzzyfuse {

namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> mean_of(const std::vector<ClassMetrics>& per_class,
                              std::optional<double> ClassMetrics::*field) {
  if (per_class.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& m : per_class) {
    if (!(m.*field)) return std::nullopt;
    total += *(m.*field);
  }
  return total / static_cast<double>(per_class.size());
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), counts_(classes * classes, 0) {}

ConfusionMatrix ConfusionMatrix::from_counts(const std::vector<std::vector<std::uint64_t>>& counts) {
  ConfusionMatrix cm(counts.size());
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t].size() != counts.size()) {
      throw Error(ErrorCode::ShapeMismatch, "confusion matrix row " + std::to_string(t) +
                                                " has " + std::to_string(counts[t].size()) +
                                                " entries, expected " + std::to_string(counts.size()));
    }
    for (std::size_t p = 0; p < counts.size(); ++p) cm.add(t, p, counts[t][p]);
  }
  return cm;
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t count) {
  if (truth >= classes_ || predicted >= classes_) {
    throw Error(ErrorCode::IndexOutOfRange, "class pair (" + std::to_string(truth) + ", " +
                                                std::to_string(predicted) + ") with " +
                                                std::to_string(classes_) + " classes");
  }
  counts_[truth * classes_ + predicted] += count;
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t s = 0;
  for (auto v : counts_) s += v;
  return s;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < classes_; ++k) s += (*this)(k, k);
  return s;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const noexcept {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < classes_; ++p) s += (*this)(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t predicted) const noexcept {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < classes_; ++t) s += (*this)(t, predicted);
  return s;
}

ConfusionMatrix confusion_matrix(std::span<const std::size_t> predictions,
                                 std::span<const std::size_t> labels, std::size_t classes) {
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) +
                                               " predictions for " + std::to_string(labels.size()) +
                                               " labels");
  }
  ConfusionMatrix cm(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes || predictions[i] >= classes) {
      throw Error(ErrorCode::IndexOutOfRange, "sample " + std::to_string(i) + " has label " +
                                                  std::to_string(labels[i]) + " / prediction " +
                                                  std::to_string(predictions[i]) + " with " +
                                                  std::to_string(classes) + " classes");
    }
    cm.add(labels[i], predictions[i]);
  }
  return cm;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, std::size_t class_index) {
  if (class_index >= cm.classes()) {
    throw Error(ErrorCode::IndexOutOfRange, "class " + std::to_string(class_index) + " of " +
                                                std::to_string(cm.classes()));
  }
  ClassMetrics m;
  m.tp = cm(class_index, class_index);
  m.fn = cm.row_sum(class_index) - m.tp;
  m.fp = cm.column_sum(class_index) - m.tp;
  m.tn = cm.total() - m.tp - m.fn - m.fp;

  const double tp = static_cast<double>(m.tp);
  const double tn = static_cast<double>(m.tn);
  const double fp = static_cast<double>(m.fp);
  const double fn = static_cast<double>(m.fn);

  m.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.specificity = ratio(tn, tn + fp);
  if (m.precision && m.recall) {
    m.f1 = ratio(2.0 * *m.precision * *m.recall, *m.precision + *m.recall);
  }
  if (m.recall && m.specificity) m.auc_paper = (*m.recall + *m.specificity) / 2.0;
  m.mcc = ratio(tp * tn - fn * fp, std::sqrt((tp + fn) * (tn + fp) * (tp + fp) * (tn + fn)));
  return m;
}

MetricsReport macro_metrics(const ConfusionMatrix& cm) {
  MetricsReport report;
  for (std::size_t k = 0; k < cm.classes(); ++k) report.per_class.push_back(class_metrics(cm, k));

  report.accuracy = ratio(static_cast<double>(cm.trace()), static_cast<double>(cm.total()));
  report.precision = mean_of(report.per_class, &ClassMetrics::precision);
  report.recall = mean_of(report.per_class, &ClassMetrics::recall);
  report.specificity = mean_of(report.per_class, &ClassMetrics::specificity);
  report.f1 = mean_of(report.per_class, &ClassMetrics::f1);
  report.auc_paper = mean_of(report.per_class, &ClassMetrics::auc_paper);
  report.mcc_macro = mean_of(report.per_class, &ClassMetrics::mcc);

  // Gorodkin's R_K statistic.
  const double s = static_cast<double>(cm.total());
  const double c = static_cast<double>(cm.trace());
  double pt = 0.0, pp = 0.0, tt = 0.0;
  for (std::size_t k = 0; k < cm.classes(); ++k) {
    const double p = static_cast<double>(cm.column_sum(k));
    const double t = static_cast<double>(cm.row_sum(k));
    pt += p * t;
    pp += p * p;
    tt += t * t;
  }
  report.mcc_multiclass = ratio(c * s - pt, std::sqrt((s * s - pp) * (s * s - tt)));
  return report;
}

ConfusionMatrix one_vs_rest(const ConfusionMatrix& cm, std::size_t positive) {
  if (positive >= cm.classes()) {
    throw Error(ErrorCode::IndexOutOfRange, "positive class " + std::to_string(positive) + " of " +
                                                std::to_string(cm.classes()));
  }
  ConfusionMatrix out(2);
  for (std::size_t t = 0; t < cm.classes(); ++t) {
    for (std::size_t p = 0; p < cm.classes(); ++p) {
      out.add(t == positive ? 0 : 1, p == positive ? 0 : 1, cm(t, p));
    }
  }
  return out;
}

}  // namespace fuzzyfuse
