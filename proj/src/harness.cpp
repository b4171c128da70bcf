#include "lintext/harness.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace lintext {

namespace {

long bump(std::atomic<long>* counter) {
  return counter ? counter->fetch_add(1, std::memory_order_relaxed) : 0;
}

double mcc_of(const Model& model, const PreparedData& data) {
  const std::vector<double> scores = score_rows(model, data);
  std::vector<Label> predicted(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = label_for_score(scores[i]);
  return mcc(confusion(data.labels, predicted));
}

// Rethrows the active exception with `prefix` prepended, keeping its type.
[[noreturn]] void rethrow_annotated(const std::string& prefix) {
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const UsageError& e) {
    throw UsageError(prefix + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

}  // namespace

std::vector<double> score_rows(const Model& model, const PreparedData& data) {
  std::vector<double> scores(data.size());
  const bool vtt = std::holds_alternative<VttModel>(model);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    if (vtt && data.ner.cols() > 0) {
      const std::vector<double> counts = data.ner_row(row);
      scores[r] = predict(model, data.features, row, counts).score;
    } else {
      scores[r] = predict(model, data.features, row).score;
    }
  }
  return scores;
}

SelectionResult inner_select(ClassifierKind kind, const std::vector<HyperParams>& grid,
                             const PreparedData& outer_train, std::span<const Split> inner,
                             std::atomic<long>* trainings) {
  if (grid.empty()) throw UsageError("inner_select: empty hyperparameter grid");
  if (inner.empty()) throw UsageError("inner_select: no inner splits");
  SelectionResult result;
  std::vector<double> sums(grid.size(), 0.0);
  result.errors.assign(grid.size(), std::string());

  for (const Split& split : inner) {
    const PreparedData train = outer_train.select_rows(split.train);
    const PreparedData val = outer_train.select_rows(split.test);
    std::unique_ptr<Trainer> trainer;
    std::string setup_error;
    try {
      trainer = make_trainer(kind, train.view());
    } catch (const DataError& e) {
      setup_error = e.what();
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (!result.errors[g].empty()) continue;
      bump(trainings);
      if (!trainer) {
        result.errors[g] = setup_error;
        continue;
      }
      try {
        sums[g] += mcc_of(trainer->fit(grid[g]), val);
      } catch (const DataError& e) {
        result.errors[g] = e.what();
      }
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::size_t> best;
  result.mean_mcc.assign(grid.size(), nan);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!result.errors[g].empty()) continue;
    result.mean_mcc[g] = sums[g] / static_cast<double>(inner.size());
    if (!best || result.mean_mcc[g] > result.mean_mcc[*best]) best = g;
  }
  if (!best) throw DataError("every grid value failed to train: " + result.errors.front());
  result.index = *best;
  result.chosen = grid[*best];
  return result;
}

RunResult run_experiment(const ExperimentSpec& spec, std::span<const TokenizedDocument> docs,
                         const NerCounts* ner, const RunOptions& options) {
  std::vector<Label> labels;
  labels.reserve(docs.size());
  for (const auto& d : docs) labels.push_back(d.label);
  return run_experiment(spec, docs, ner, make_fold_plan(labels, spec.seed), options);
}

RunResult run_experiment(const ExperimentSpec& spec, std::span<const TokenizedDocument> docs,
                         const NerCounts* ner, const FoldPlan& plan, const RunOptions& options) {
  spec.validate();
  const std::vector<HyperParams> grid = spec.effective_grid();
  for (const auto& h : grid) h.validate(spec.classifier);

  RunResult result;
  result.spec = spec;
  result.folds.resize(plan.outer.size());
  std::atomic<long> trainings{0};

  auto run_fold = [&](std::size_t f) {
    const OuterFold& outer = plan.outer[f];
    try {
      std::vector<TokenizedDocument> train_docs;
      std::vector<TokenizedDocument> test_docs;
      train_docs.reserve(outer.split.train.size());
      for (std::size_t i : outer.split.train) train_docs.push_back(docs[i]);
      for (std::size_t i : outer.split.test) test_docs.push_back(docs[i]);

      PreparedData train;
      const FeaturePipeline pipeline = FeaturePipeline::fit(spec, train_docs, ner, &train);
      const PreparedData test = pipeline.transform(test_docs, ner);

      FoldResult& fr = result.folds[f];
      fr.repeat = outer.repeat;
      fr.block = outer.block;
      fr.pca_k = pipeline.effective_pca_k();
      if (grid.size() == 1 && outer.inner.empty()) {
        fr.chosen = grid.front();
      } else {
        const SelectionResult sel = inner_select(spec.classifier, grid, train, outer.inner, &trainings);
        fr.chosen = sel.chosen;
        fr.inner_mcc = sel.mean_mcc[sel.index];
      }
      fr.chosen_label = describe(spec.classifier, fr.chosen);

      bump(&trainings);
      const Model model = make_trainer(spec.classifier, train.view())->fit(fr.chosen);
      const std::vector<double> scores = score_rows(model, test);
      std::vector<Label> predicted(scores.size());
      for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = label_for_score(scores[i]);
      const Confusion c = confusion(test.labels, predicted);
      const F1Result f1v = f1(c);
      fr.f1 = f1v.value;
      fr.f1_undefined = f1v.undefined;
      fr.mcc = mcc(c);
      fr.iauc = interpolated_pr_auc(scores, test.labels).area;
      if (options.log)
        options.log(spec.name() + " fold " + std::to_string(f) + ": " + fr.chosen_label +
                    " mcc=" + std::to_string(fr.mcc));
    } catch (...) {
      rethrow_annotated(spec.name() + ": outer fold " + std::to_string(f) + " (repeat " +
                        std::to_string(outer.repeat) + ", block " + std::to_string(outer.block) +
                        "): ");
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, plan.outer.size()));
  if (threads == 1) {
    for (std::size_t f = 0; f < plan.outer.size(); ++f) run_fold(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::size_t first_error_fold = plan.outer.size();
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t f; (f = next.fetch_add(1)) < plan.outer.size();) {
          try {
            run_fold(f);
          } catch (...) {
            std::lock_guard lock(mu);
            // Report the lowest failing fold so errors do not depend on scheduling.
            if (f < first_error_fold) {
              first_error_fold = f;
              first_error = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<double> f1s, mccs, iaucs;
  for (const auto& fr : result.folds) {
    f1s.push_back(fr.f1);
    mccs.push_back(fr.mcc);
    iaucs.push_back(fr.iauc);
  }
  result.f1 = summarize(f1s);
  result.mcc = summarize(mccs);
  result.iauc = summarize(iaucs);
  result.trainings = trainings.load();
  if (options.training_counter) options.training_counter->fetch_add(result.trainings);
  return result;
}

SweepResult sweep(std::span<const ExperimentSpec> specs, std::span<const TokenizedDocument> docs,
                  const NerCounts* ner, const RunOptions& options) {
  SweepResult out;
  for (const auto& spec : specs) {
    try {
      out.runs.push_back(run_experiment(spec, docs, ner, options));
    } catch (const std::exception& e) {
      if (options.log) options.log("skipping " + spec.name() + ": " + e.what());
      out.failures.push_back({spec, e.what()});
    }
  }
  return out;
}

std::vector<ExperimentSpec> expand_grid(const GridAxes& axes, const ExperimentSpec& base) {
  std::vector<ExperimentSpec> specs;
  for (ClassifierKind c : axes.classifiers)
    for (TransformRegime t : axes.transforms)
      for (const auto& k : axes.pca)
        for (bool b : axes.bigrams)
          for (const auto& ner : axes.ner_sets) {
            ExperimentSpec s = base;
            s.classifier = c;
            s.transform = t;
            s.pca_k = k;
            s.bigrams = b;
            s.ner_tools = ner;
            s.grid.clear();
            if (!is_forbidden(s)) specs.push_back(std::move(s));
          }
  return specs;
}

}  // namespace lintext
