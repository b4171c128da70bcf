#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lintext/classifiers.hpp"
#include "lintext/corpus.hpp"
#include "lintext/features.hpp"
#include "lintext/ner.hpp"
#include "lintext/pca.hpp"

namespace lintext {

/// One cell of an experiment grid.
struct ExperimentSpec {
  ClassifierKind classifier = ClassifierKind::Svm;
  TransformRegime transform = TransformRegime::None;
  std::optional<int> pca_k;  // nullopt: no reduction
  bool bigrams = false;
  std::vector<std::string> ner_tools;
  std::vector<HyperParams> grid;  // empty: default_grid()
  std::uint64_t seed = 42;
  TfidfDenominator tfidf_denominator = TfidfDenominator::DistinctFeatures;

  std::string name() const;
  std::string pca_label() const;
  std::string ngram_label() const { return bigrams ? "unigram+bigram" : "unigram"; }
  std::string ner_label() const;

  /// Throws UsageError for combinations that are never run: length
  /// normalisation with NER counts, and VTT or naive Bayes on PCA-reduced
  /// data. Naive Bayes additionally needs untransformed binary data.
  void validate() const;

  std::vector<HyperParams> effective_grid() const;
};

bool is_forbidden(const ExperimentSpec& spec);

/// Default grids, ordered from the simplest model to the most complex so the
/// first maximum wins ties: C ascending, alpha ascending, shrinkage
/// descending, VTT lambda quantile ascending then beta ascending.
std::vector<HyperParams> default_grid(ClassifierKind kind, std::size_t num_ner_tools);

inline constexpr int kVttLambdaQuantiles = 25;

/// Feature-space data for a set of documents, ready for a classifier.
struct PreparedData {
  Matrix features;       // transformed (+ NER columns for non-VTT) (+ PCA)
  Matrix occurrence;     // binary textual occurrence matrix
  DenseMatrix ner;       // N x J raw counts (VTT only)
  std::vector<std::string> ids;
  std::vector<Label> labels;
  std::vector<std::string> ner_tool_ids;

  std::size_t size() const { return labels.size(); }
  PreparedData select_rows(std::span<const std::size_t> rows) const;
  TrainingView view() const;
  std::vector<double> ner_row(Eigen::Index r) const;
};

/// Statistics fitted on a training block only (vocabulary with its document
/// counts, PCA mean and components) and applied unchanged to any other block.
class FeaturePipeline {
 public:
  static FeaturePipeline fit(const ExperimentSpec& spec, std::span<const TokenizedDocument> train,
                             const NerCounts* ner, PreparedData* train_out = nullptr);

  PreparedData transform(std::span<const TokenizedDocument> docs, const NerCounts* ner) const;

  /// Rebuilds a fitted pipeline from its saved parts.
  static FeaturePipeline restore(ExperimentSpec spec, Vocabulary text_vocab,
                                 std::optional<PcaModel> pca);

  const ExperimentSpec& spec() const { return spec_; }
  const Vocabulary& text_vocabulary() const { return text_vocab_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::optional<PcaModel>& pca() const { return pca_; }
  /// Components actually kept (after clamping to the training block).
  std::optional<Eigen::Index> effective_pca_k() const;

 private:
  PreparedData prepare(std::span<const TokenizedDocument> docs, const NerCounts* ner) const;

  ExperimentSpec spec_;
  Vocabulary text_vocab_;
  Vocabulary vocab_;  // text_vocab_ plus NER columns for non-VTT classifiers
  std::optional<PcaModel> pca_;
};

}  // namespace lintext
