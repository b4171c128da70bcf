#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lintext/eval.hpp"
#include "lintext/fold_plan.hpp"
#include "lintext/pipeline.hpp"

namespace lintext {

struct SelectionResult {
  std::size_t index = 0;           // position of the chosen value in the grid
  HyperParams chosen;
  std::vector<double> mean_mcc;    // NaN for grid values that failed to train
  std::vector<std::string> errors; // empty string when the value trained everywhere
};

struct FoldResult {
  int repeat = 0;
  int block = 0;
  HyperParams chosen;
  std::string chosen_label;
  double inner_mcc = 0.0;  // mean inner MCC of the chosen value
  std::optional<Eigen::Index> pca_k;  // components actually used
  double f1 = 0.0;
  bool f1_undefined = false;
  double mcc = 0.0;
  double iauc = 0.0;
};

struct RunResult {
  ExperimentSpec spec;
  std::vector<FoldResult> folds;
  Summary f1;
  Summary mcc;
  Summary iauc;
  long trainings = 0;
};

struct RunOptions {
  unsigned threads = 1;  // outer folds run concurrently when > 1
  std::function<void(const std::string&)> log;
  // Incremented once per model fit, successful or not.
  std::atomic<long>* training_counter = nullptr;
};

/// Fits every grid value on each inner split of `outer_train`, scores MCC on
/// the held-out part and returns the first value with the highest mean.
/// Values that fail on any inner split are skipped; if all fail the first
/// error is rethrown.
SelectionResult inner_select(ClassifierKind kind, const std::vector<HyperParams>& grid,
                             const PreparedData& outer_train, std::span<const Split> inner,
                             std::atomic<long>* trainings = nullptr);

/// Scores every row of `data` with `model`.
std::vector<double> score_rows(const Model& model, const PreparedData& data);

RunResult run_experiment(const ExperimentSpec& spec, std::span<const TokenizedDocument> docs,
                         const NerCounts* ner, const FoldPlan& plan, const RunOptions& options = {});

/// Uses make_fold_plan(labels, spec.seed).
RunResult run_experiment(const ExperimentSpec& spec, std::span<const TokenizedDocument> docs,
                         const NerCounts* ner, const RunOptions& options = {});

struct SweepFailure {
  ExperimentSpec spec;
  std::string message;
};

struct SweepResult {
  std::vector<RunResult> runs;
  std::vector<SweepFailure> failures;
};

/// Runs each spec in order; a spec that throws is recorded and skipped.
SweepResult sweep(std::span<const ExperimentSpec> specs, std::span<const TokenizedDocument> docs,
                  const NerCounts* ner, const RunOptions& options = {});

struct GridAxes {
  std::vector<ClassifierKind> classifiers;
  std::vector<TransformRegime> transforms;
  std::vector<std::optional<int>> pca;
  std::vector<bool> bigrams{false};
  std::vector<std::vector<std::string>> ner_sets{{}};
};

/// Cartesian product in axis order (classifier outermost), dropping
/// forbidden combinations.
std::vector<ExperimentSpec> expand_grid(const GridAxes& axes, const ExperimentSpec& base);

}  // namespace lintext
