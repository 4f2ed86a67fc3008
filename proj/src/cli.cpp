#include "fuzzyfuse/cli.hpp"

#include "fuzzyfuse/choquet.hpp"
#include "fuzzyfuse/ensemble.hpp"
#include "fuzzyfuse/error.hpp"
#include "fuzzyfuse/fuzzy_measure.hpp"
#include "fuzzyfuse/io.hpp"
#include "fuzzyfuse/metrics.hpp"
#include "fuzzyfuse/serialization.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fuzzyfuse {

namespace {

struct LambdaArgs {
  std::vector<double> densities;
};

struct AggregateArgs {
  std::vector<std::string> inputs;
  std::vector<double> densities;
  std::string out;
};

struct FitArgs {
  std::vector<std::string> features;
  std::vector<std::string> names;
  std::string labels;
  std::string head;
  std::size_t population = 15;
  std::size_t generations = 100;
  double scale_factor = 0.5;
  double crossover_rate = 0.9;
  std::uint64_t seed = 0;
  std::string out;
};

struct EvaluateArgs {
  std::vector<std::string> features;
  std::string labels;
  std::string model;
  std::string head;
  bool binary = false;
  std::size_t positive = 0;
  std::string out;
};

struct MetricsArgs {
  std::string predictions;
  std::string labels;
  std::size_t classes = 0;
  bool binary = false;
  std::size_t positive = 0;
  std::string out;
};

// Loads one matrix per file and checks they agree in shape, naming the
// offending file.
EvidenceBatch load_evidence(const std::vector<std::string>& paths) {
  std::vector<Matrix> matrices;
  matrices.reserve(paths.size());
  for (const auto& path : paths) {
    matrices.push_back(load_matrix(path));
    const Matrix& first = matrices.front();
    const Matrix& last = matrices.back();
    if (!last.same_shape(first)) {
      throw Error(ErrorCode::ShapeMismatch,
                  path + " is " + std::to_string(last.rows()) + "x" + std::to_string(last.cols()) +
                      " but " + paths.front() + " is " + std::to_string(first.rows()) + "x" +
                      std::to_string(first.cols()));
    }
  }
  return EvidenceBatch(std::move(matrices));
}

void check_head_fits(const EvidenceBatch& evidence, const LinearHead& head,
                     const std::string& features_path, const std::string& head_path) {
  if (evidence.dimensions() != head.inputs()) {
    throw Error(ErrorCode::ShapeMismatch, features_path + " has " +
                                              std::to_string(evidence.dimensions()) +
                                              " columns but " + head_path + " has " +
                                              std::to_string(head.inputs()) + " weight rows");
  }
}

void check_labels(const std::vector<std::size_t>& labels, std::size_t samples, std::size_t classes,
                  const std::string& labels_path, const std::string& samples_path) {
  if (labels.size() != samples) {
    throw Error(ErrorCode::ShapeMismatch, labels_path + " has " + std::to_string(labels.size()) +
                                              " labels but " + samples_path + " has " +
                                              std::to_string(samples) + " rows");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes) {
      throw Error(ErrorCode::IndexOutOfRange, labels_path + ": data row " + std::to_string(i + 1) +
                                                  " has label " + std::to_string(labels[i]) +
                                                  " but there are " + std::to_string(classes) +
                                                  " classes");
    }
  }
}

void emit_report(const ConfusionMatrix& cm, bool binary, std::size_t positive,
                 const std::string& out_path, std::ostream& out) {
  const ConfusionMatrix used = binary ? one_vs_rest(cm, positive) : cm;
  std::vector<std::string> names;
  if (binary) names = {"class_" + std::to_string(positive), "rest"};
  const MetricsReport report = macro_metrics(used);
  out << report_to_table(used, report, names);
  if (!out_path.empty()) write_text(out_path, report_to_json(used, report, names).dump(2) + "\n");
}

int run_lambda(const LambdaArgs& args, std::ostream& out) {
  const double lambda = solve_lambda(DensityVector(args.densities));
  out << format_significant(lambda, 9) << '\n';
  return kExitOk;
}

int run_aggregate(const AggregateArgs& args, std::ostream& out) {
  if (args.inputs.size() != args.densities.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(args.inputs.size()) + " input files but " +
                                              std::to_string(args.densities.size()) + " densities");
  }
  const EvidenceBatch evidence = load_evidence(args.inputs);
  const SugenoMeasure measure{DensityVector(args.densities)};
  const Matrix fused = choquet_aggregate(evidence, measure);
  write_matrix(args.out, fused);
  out << "lambda " << format_significant(measure.lambda(), 9) << '\n'
      << "wrote " << fused.rows() << "x" << fused.cols() << " matrix to " << args.out << '\n';
  return kExitOk;
}

int run_fit(const FitArgs& args, std::ostream& out) {
  const EvidenceBatch evidence = load_evidence(args.features);
  const LinearHead head = load_head(args.head);
  check_head_fits(evidence, head, args.features.front(), args.head);
  auto labels = load_labels(args.labels);
  check_labels(labels, evidence.samples(), head.classes(), args.labels, args.features.front());
  if (!args.names.empty() && args.names.size() != args.features.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(args.names.size()) + " names for " +
                                              std::to_string(args.features.size()) + " feature files");
  }

  DEConfig config = DEConfig::unit_box(evidence.criteria());
  config.population_size = args.population;
  config.max_generations = args.generations;
  config.scale_factor = args.scale_factor;
  config.crossover_rate = args.crossover_rate;
  config.seed = args.seed;

  const LabeledSet validation(evidence, std::move(labels));
  const FittedEnsemble model = fit_densities(validation, head, config, args.names);
  write_text(args.out, model_to_json(model, args.head).dump(2) + "\n");

  out << "criterion,density\n";
  for (std::size_t i = 0; i < model.criteria.size(); ++i) {
    out << model.criteria[i] << ',' << format_significant(model.measure.densities()[i], 9) << '\n';
  }
  out << "lambda " << format_significant(model.measure.lambda(), 9) << '\n'
      << "validation loss " << format_significant(model.fit.final_loss, 9) << '\n'
      << "wrote model to " << args.out << '\n';
  return kExitOk;
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out) {
  std::optional<std::filesystem::path> head_override;
  if (!args.head.empty()) head_override = args.head;
  const LoadedModel loaded = load_model(args.model, head_override);
  const FittedEnsemble& model = loaded.model;
  if (args.features.size() != model.criteria.size()) {
    throw Error(ErrorCode::ShapeMismatch, args.model + " expects " +
                                              std::to_string(model.criteria.size()) +
                                              " feature files, got " +
                                              std::to_string(args.features.size()));
  }
  const EvidenceBatch evidence = load_evidence(args.features);
  check_head_fits(evidence, model.head, args.features.front(),
                  head_override ? args.head : loaded.head_path);
  const auto labels = load_labels(args.labels);
  check_labels(labels, evidence.samples(), model.head.classes(), args.labels, args.features.front());

  const auto predictions = predict(evidence, model);
  emit_report(confusion_matrix(predictions, labels, model.head.classes()), args.binary,
              args.positive, args.out, out);
  return kExitOk;
}

int run_metrics(const MetricsArgs& args, std::ostream& out) {
  const auto predictions = load_labels(args.predictions);
  const auto labels = load_labels(args.labels);
  if (predictions.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, args.predictions + " has " +
                                               std::to_string(predictions.size()) + " rows but " +
                                               args.labels + " has " + std::to_string(labels.size()));
  }
  check_labels(labels, labels.size(), args.classes, args.labels, args.labels);
  check_labels(predictions, predictions.size(), args.classes, args.predictions, args.predictions);
  emit_report(confusion_matrix(predictions, labels, args.classes), args.binary, args.positive,
              args.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Choquet-integral fusion of model evidence with Sugeno lambda-measures", "fuzzyfuse"};
  app.require_subcommand(1);

  LambdaArgs lambda_args;
  auto* lambda_cmd = app.add_subcommand("lambda", "Solve lambda for a set of densities");
  lambda_cmd->add_option("--densities", lambda_args.densities, "Comma-separated densities")
      ->required()
      ->delimiter(',');

  AggregateArgs agg;
  auto* agg_cmd = app.add_subcommand("aggregate", "Choquet-fuse aligned matrices");
  agg_cmd->add_option("--inputs", agg.inputs, "Comma-separated CSV files, one per criterion")
      ->required()
      ->delimiter(',');
  agg_cmd->add_option("--densities", agg.densities, "Comma-separated densities")
      ->required()
      ->delimiter(',');
  agg_cmd->add_option("--out", agg.out, "Output CSV")->required();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit densities with differential evolution");
  fit_cmd->add_option("--features", fit.features, "Comma-separated feature CSVs")
      ->required()
      ->delimiter(',');
  fit_cmd->add_option("--names", fit.names, "Comma-separated criterion names")->delimiter(',');
  fit_cmd->add_option("--labels", fit.labels, "Validation labels CSV")->required();
  fit_cmd->add_option("--head", fit.head, "Linear head CSV (weights then bias row)")->required();
  fit_cmd->add_option("--np", fit.population, "Population size")->capture_default_str();
  fit_cmd->add_option("--generations", fit.generations, "Generations")->capture_default_str();
  fit_cmd->add_option("--scale-f", fit.scale_factor, "Scale factor F")->capture_default_str();
  fit_cmd->add_option("--cr", fit.crossover_rate, "Crossover rate")->capture_default_str();
  fit_cmd->add_option("--seed", fit.seed, "Random seed")->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Model JSON output")->required();

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a fitted model");
  eval_cmd->add_option("--features", eval.features, "Comma-separated feature CSVs")
      ->required()
      ->delimiter(',');
  eval_cmd->add_option("--labels", eval.labels, "Labels CSV")->required();
  eval_cmd->add_option("--model", eval.model, "Model JSON from fit")->required();
  eval_cmd->add_option("--head", eval.head, "Override the head path stored in the model");
  eval_cmd->add_flag("--binary", eval.binary, "Report positive-class-vs-rest metrics");
  eval_cmd->add_option("--positive-class", eval.positive, "Positive class for --binary")
      ->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report JSON output");

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "Metrics from raw predictions");
  met_cmd->add_option("--predictions", met.predictions, "Predicted class CSV")->required();
  met_cmd->add_option("--labels", met.labels, "True class CSV")->required();
  met_cmd->add_option("--classes", met.classes, "Number of classes")
      ->required()
      ->check(CLI::PositiveNumber);
  met_cmd->add_flag("--binary", met.binary, "Report positive-class-vs-rest metrics");
  met_cmd->add_option("--positive-class", met.positive, "Positive class for --binary")
      ->capture_default_str();
  met_cmd->add_option("--out", met.out, "Report JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (*lambda_cmd) return run_lambda(lambda_args, out);
    if (*agg_cmd) return run_aggregate(agg, out);
    if (*fit_cmd) return run_fit(fit, out);
    if (*eval_cmd) return run_evaluate(eval, out);
    if (*met_cmd) return run_metrics(met, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsageError;
}

}  // namespace fuzzyfuse
