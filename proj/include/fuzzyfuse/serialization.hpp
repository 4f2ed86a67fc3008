#pragma once

#include "fuzzyfuse/ensemble.hpp"
#include "fuzzyfuse/metrics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fuzzyfuse {

/// Model document written by `fit` and read back by `evaluate`.
/// The head itself is not embedded; the document records its path.
nlohmann::json model_to_json(const FittedEnsemble& model, const std::string& head_path);

struct LoadedModel {
  FittedEnsemble model;
  std::string head_path;
};

/// Rebuilds a fitted ensemble. The head is read from `head_override` when
/// given, otherwise from the recorded path.
LoadedModel model_from_json(const nlohmann::json& doc,
                            const std::optional<std::filesystem::path>& head_override = {});

LoadedModel load_model(const std::filesystem::path& path,
                       const std::optional<std::filesystem::path>& head_override = {});

/// Undefined metrics serialize as null.
nlohmann::json report_to_json(const ConfusionMatrix& cm, const MetricsReport& report,
                              const std::vector<std::string>& class_names = {});

/// Fixed-width table, values in percent with four decimals.
std::string report_to_table(const ConfusionMatrix& cm, const MetricsReport& report,
                            const std::vector<std::string>& class_names = {});

}  // namespace fuzzyfuse
