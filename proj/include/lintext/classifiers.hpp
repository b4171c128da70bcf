#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lintext/matrix.hpp"

namespace lintext {

enum class ClassifierKind { Vtt, Svm, LogReg, NaiveBayes, Lda, DiagLda };

std::string_view to_string(ClassifierKind k);
ClassifierKind parse_classifier(std::string_view text);

// Relevant iff score > 0; a zero score is Irrelevant.
inline Label label_for_score(double score) { return score > 0.0 ? Label::Relevant : Label::Irrelevant; }

/// Per-feature occurrence proportions within each class.
struct FeatureStats {
  Vector p;  // positive class
  Vector n;  // negative class
};

/// Requires a binary matrix and both classes present.
FeatureStats feature_stats(const Matrix& m, std::span<const Label> labels);

/// arctan(p/n) - pi/4, with theta = pi/4 when n = 0 < p and theta = 0 when
/// p = n = 0.
Vector vtt_theta(const FeatureStats& stats);

struct VttModel {
  Vector theta;                // one angle per textual feature
  double lambda = 0.0;
  Vector beta;                 // one positive weight per NER tool
  std::vector<std::string> ner_tool_ids;

  Eigen::Index num_tools() const { return beta.size(); }
};

/// sum_i theta_i x_i - sum_j (beta_j - c_j) / beta_j - lambda.
double vtt_score(const VttModel& model, const Matrix& x, Eigen::Index row,
                 std::span<const double> ner_counts = {});
double vtt_score(const VttModel& model, const Vector& x, std::span<const double> ner_counts = {});

struct LinearModel {
  ClassifierKind kind = ClassifierKind::Svm;
  Vector weights;
  double bias = 0.0;

  double score(const Matrix& m, Eigen::Index row) const { return m.row_dot(row, weights) + bias; }
};

using Model = std::variant<VttModel, LinearModel>;

ClassifierKind kind_of(const Model& model);

struct SolverOptions {
  double tolerance;
  int max_iterations;
};

// Dual coordinate descent stops once every projected gradient is below the
// tolerance; the cap counts epochs.
inline constexpr SolverOptions kSvmDefaults{1e-5, 10000};
// Newton iterations stop once the gradient's infinity norm is below tolerance.
inline constexpr SolverOptions kLogRegDefaults{1e-7, 500};

/// L2-regularised hinge-loss SVM. The bias is learned as the weight of a
/// constant feature of value 1, so the objective is
/// 0.5 (|w|^2 + b^2) + C sum_r max(0, 1 - y_r (w.x_r + b)).
LinearModel train_svm(const Matrix& m, std::span<const Label> labels, double c,
                      SolverOptions options = kSvmDefaults);

/// sum_r log(1 + exp(-y_r (w.x_r + b))) + |w|^2 / (2C), bias unpenalised.
LinearModel train_logreg(const Matrix& m, std::span<const Label> labels, double c,
                         SolverOptions options = kLogRegDefaults);

/// Bernoulli naive Bayes with symmetric Beta(alpha, alpha) smoothing; the
/// score is the log posterior odds.
LinearModel train_naive_bayes(const Matrix& m, std::span<const Label> labels, double alpha);

/// Shrunk pooled-covariance LDA: (1 - g) S + g (tr S / d) I.
LinearModel train_lda(const Matrix& m, std::span<const Label> labels, double shrinkage);

/// As train_lda with S replaced by its diagonal, shrunk toward the mean
/// diagonal entry.
LinearModel train_dlda(const Matrix& m, std::span<const Label> labels, double shrinkage);

/// Both objective values are reported for diagnostics and tests.
double svm_primal_objective(const Matrix& m, std::span<const Label> labels, double c,
                            const LinearModel& model);
double logreg_objective(const Matrix& m, std::span<const Label> labels, double c,
                        const Vector& weights, double bias);
/// Gradient of logreg_objective with respect to (w, b); length d + 1.
Vector logreg_gradient(const Matrix& m, std::span<const Label> labels, double c,
                       const Vector& weights, double bias);

struct Prediction {
  double score;
  Label label;
};

/// Uniform prediction interface. `ner_counts` is consulted by VTT models only.
Prediction predict(const Model& model, const Matrix& m, Eigen::Index row,
                   std::span<const double> ner_counts = {});

/// One value per hyperparameter; only the entries relevant to a classifier
/// are read.
struct HyperParams {
  double svm_c = 1.0;
  double logreg_c = 1.0;
  double nb_alpha = 1.0;
  double lda_shrinkage = 0.0;
  double dlda_shrinkage = 0.0;
  double vtt_lambda = 0.0;
  // When set, lambda is this quantile of the training-score distribution.
  std::optional<double> vtt_lambda_quantile;
  std::vector<double> vtt_beta;

  void validate(ClassifierKind kind) const;
};

std::string describe(ClassifierKind kind, const HyperParams& params);

/// Training inputs. `features` feeds every classifier. VTT additionally
/// takes its angles from the binary `occurrence` matrix and its NER counts
/// from `ner` (N x J); the other classifiers see NER counts as ordinary
/// columns of `features`.
struct TrainingView {
  const Matrix* features = nullptr;
  const Matrix* occurrence = nullptr;
  const DenseMatrix* ner = nullptr;
  std::span<const Label> labels;
  std::vector<std::string> ner_tool_ids;
};

/// Holds the hyperparameter-independent statistics of one training set so a
/// grid of values can be fitted without recomputing them.
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual Model fit(const HyperParams& params) const = 0;
};

std::unique_ptr<Trainer> make_trainer(ClassifierKind kind, const TrainingView& view);

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

}  // namespace lintext
