#include "fuzzyfuse/serialization.hpp"

#include "fuzzyfuse/error.hpp"
#include "fuzzyfuse/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fuzzyfuse {

namespace {

constexpr const char* kModelFormat = "fuzzyfuse-model/1";

nlohmann::json optional_value(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string class_name(const std::vector<std::string>& names, std::size_t k) {
  return k < names.size() ? names[k] : "class_" + std::to_string(k);
}

std::string percent_cell(const std::optional<double>& v) {
  if (!v) return "undef";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v * 100.0);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : std::string(width - s.size(), ' ') + s;
}

std::string left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

nlohmann::json model_to_json(const FittedEnsemble& model, const std::string& head_path) {
  const DEConfig& de = model.fit.de_config;
  nlohmann::json history = nlohmann::json::array();
  for (const auto& rec : model.fit.history.records) {
    history.push_back({{"generation", rec.generation},
                       {"best_fitness", rec.best_fitness},
                       {"best_vector", rec.best_vector}});
  }
  const auto g = model.measure.densities().values();
  return {
      {"format", kModelFormat},
      {"criteria", model.criteria},
      {"densities", std::vector<double>(g.begin(), g.end())},
      {"lambda", model.measure.lambda()},
      {"head", head_path},
      {"features", model.head.inputs()},
      {"classes", model.head.classes()},
      {"seed", de.seed},
      {"de",
       {{"population_size", de.population_size},
        {"scale_factor", de.scale_factor},
        {"crossover_rate", de.crossover_rate},
        {"max_generations", de.max_generations},
        {"lower_bound", de.lower_bound},
        {"upper_bound", de.upper_bound}}},
      {"final_loss", model.fit.final_loss},
      {"history", history},
  };
}

LoadedModel model_from_json(const nlohmann::json& doc,
                            const std::optional<std::filesystem::path>& head_override) {
  try {
    if (doc.at("format").get<std::string>() != kModelFormat) {
      throw Error(ErrorCode::InvalidModel, "unsupported model format");
    }
    auto criteria = doc.at("criteria").get<std::vector<std::string>>();
    auto densities = doc.at("densities").get<std::vector<double>>();
    const double lambda = doc.at("lambda").get<double>();
    const auto head_path = doc.at("head").get<std::string>();
    if (criteria.size() != densities.size()) {
      throw Error(ErrorCode::InvalidModel, "criteria and densities differ in length");
    }

    LinearHead head = load_head(head_override ? *head_override : std::filesystem::path(head_path));
    if (head.inputs() != doc.at("features").get<std::size_t>() ||
        head.classes() != doc.at("classes").get<std::size_t>()) {
      throw Error(ErrorCode::ShapeMismatch, "head does not match the shape recorded in the model");
    }

    FitMetadata fit;
    const auto& de = doc.at("de");
    fit.de_config.dimension = densities.size();
    fit.de_config.population_size = de.at("population_size").get<std::size_t>();
    fit.de_config.scale_factor = de.at("scale_factor").get<double>();
    fit.de_config.crossover_rate = de.at("crossover_rate").get<double>();
    fit.de_config.max_generations = de.at("max_generations").get<std::size_t>();
    fit.de_config.lower_bound = de.at("lower_bound").get<std::vector<double>>();
    fit.de_config.upper_bound = de.at("upper_bound").get<std::vector<double>>();
    fit.de_config.seed = doc.at("seed").get<std::uint64_t>();
    fit.final_loss = doc.at("final_loss").get<double>();
    for (const auto& rec : doc.at("history")) {
      fit.history.records.push_back({rec.at("generation").get<std::size_t>(),
                                     rec.at("best_fitness").get<double>(),
                                     rec.at("best_vector").get<std::vector<double>>()});
    }

    return {FittedEnsemble{SugenoMeasure(DensityVector(std::move(densities)), lambda), std::move(head),
                           std::move(criteria), std::move(fit)},
            head_path};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidModel, e.what());
  }
}

LoadedModel load_model(const std::filesystem::path& path,
                       const std::optional<std::filesystem::path>& head_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidModel, path.string() + ": " + e.what());
  }
  try {
    return model_from_json(doc, head_override);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

nlohmann::json report_to_json(const ConfusionMatrix& cm, const MetricsReport& report,
                              const std::vector<std::string>& class_names) {
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t t = 0; t < cm.classes(); ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t p = 0; p < cm.classes(); ++p) row.push_back(cm(t, p));
    counts.push_back(row);
  }
  nlohmann::json per_class = nlohmann::json::array();
  for (std::size_t k = 0; k < report.per_class.size(); ++k) {
    const auto& m = report.per_class[k];
    per_class.push_back({{"class", class_name(class_names, k)},
                         {"tp", m.tp},
                         {"tn", m.tn},
                         {"fp", m.fp},
                         {"fn", m.fn},
                         {"accuracy", optional_value(m.accuracy)},
                         {"precision", optional_value(m.precision)},
                         {"recall", optional_value(m.recall)},
                         {"specificity", optional_value(m.specificity)},
                         {"f1", optional_value(m.f1)},
                         {"auc_paper", optional_value(m.auc_paper)},
                         {"mcc", optional_value(m.mcc)}});
  }
  return {{"samples", cm.total()},
          {"confusion_matrix", counts},
          {"per_class", per_class},
          {"macro",
           {{"accuracy", optional_value(report.accuracy)},
            {"precision", optional_value(report.precision)},
            {"recall", optional_value(report.recall)},
            {"specificity", optional_value(report.specificity)},
            {"f1", optional_value(report.f1)},
            {"auc_paper", optional_value(report.auc_paper)},
            {"mcc_macro", optional_value(report.mcc_macro)},
            {"mcc_multiclass", optional_value(report.mcc_multiclass)}}}};
}

std::string report_to_table(const ConfusionMatrix& cm, const MetricsReport& report,
                            const std::vector<std::string>& class_names) {
  constexpr std::size_t kLabel = 16;
  constexpr std::size_t kCell = 14;
  std::ostringstream os;

  os << "confusion matrix (rows = true, columns = predicted)\n" << pad("", kLabel);
  for (std::size_t p = 0; p < cm.classes(); ++p) os << pad(class_name(class_names, p), kCell);
  os << '\n';
  for (std::size_t t = 0; t < cm.classes(); ++t) {
    os << left(class_name(class_names, t), kLabel);
    for (std::size_t p = 0; p < cm.classes(); ++p) os << pad(std::to_string(cm(t, p)), kCell);
    os << '\n';
  }

  os << '\n' << left("metric (%)", kLabel);
  for (std::size_t k = 0; k < report.per_class.size(); ++k) os << pad(class_name(class_names, k), kCell);
  os << pad("macro", kCell) << '\n';

  using Field = std::optional<double> ClassMetrics::*;
  const struct {
    const char* name;
    Field field;
    std::optional<double> macro;
  } rows[] = {
      {"accuracy", &ClassMetrics::accuracy, report.accuracy},
      {"precision", &ClassMetrics::precision, report.precision},
      {"recall", &ClassMetrics::recall, report.recall},
      {"specificity", &ClassMetrics::specificity, report.specificity},
      {"f1", &ClassMetrics::f1, report.f1},
      {"auc_paper", &ClassMetrics::auc_paper, report.auc_paper},
      {"mcc", &ClassMetrics::mcc, report.mcc_macro},
  };
  for (const auto& row : rows) {
    os << left(row.name, kLabel);
    for (const auto& m : report.per_class) os << pad(percent_cell(m.*(row.field)), kCell);
    os << pad(percent_cell(row.macro), kCell) << '\n';
  }
  os << left("mcc_multiclass", kLabel) << pad(percent_cell(report.mcc_multiclass), kCell) << '\n';
  return os.str();
}

}  // namespace fuzzyfuse
