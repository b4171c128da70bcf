#include "lintext/pipeline.hpp"

#include <sstream>

namespace lintext {

std::string ExperimentSpec::pca_label() const {
  return pca_k ? std::to_string(*pca_k) : std::string("none");
}

std::string ExperimentSpec::ner_label() const {
  if (ner_tools.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < ner_tools.size(); ++i) out += (i ? "+" : "") + ner_tools[i];
  return out;
}

std::string ExperimentSpec::name() const {
  std::ostringstream os;
  os << to_string(classifier) << '|' << to_string(transform) << "|pca=" << pca_label() << '|'
     << ngram_label() << "|ner=" << ner_label();
  return os.str();
}

void ExperimentSpec::validate() const {
  if (uses_length_norm(transform) && !ner_tools.empty())
    throw UsageError(name() + ": length normalisation cannot be combined with NER count features");
  if ((classifier == ClassifierKind::Vtt || classifier == ClassifierKind::NaiveBayes) && pca_k)
    throw UsageError(name() + ": " + std::string(to_string(classifier)) +
                     " is not run on PCA-reduced data");
  if (classifier == ClassifierKind::NaiveBayes &&
      (transform != TransformRegime::None || !ner_tools.empty()))
    throw UsageError(name() + ": naive Bayes needs untransformed binary features without NER counts");
  if (pca_k && *pca_k < 1) throw UsageError(name() + ": pca components must be >= 1");
  for (const auto& g : grid) g.validate(classifier);
  if (classifier == ClassifierKind::Vtt)
    for (const auto& g : grid)
      if (g.vtt_beta.size() != ner_tools.size())
        throw UsageError(name() + ": every VTT grid point needs one beta per NER tool");
}

bool is_forbidden(const ExperimentSpec& spec) {
  try {
    spec.validate();
    return false;
  } catch (const UsageError&) {
    return true;
  }
}

std::vector<HyperParams> ExperimentSpec::effective_grid() const {
  return grid.empty() ? default_grid(classifier, ner_tools.size()) : grid;
}

std::vector<HyperParams> default_grid(ClassifierKind kind, std::size_t num_ner_tools) {
  std::vector<HyperParams> grid;
  const double cs[] = {0.01, 0.1, 1, 10, 100};
  switch (kind) {
    case ClassifierKind::Svm:
      for (double c : cs) grid.emplace_back().svm_c = c;
      break;
    case ClassifierKind::LogReg:
      for (double c : cs) grid.emplace_back().logreg_c = c;
      break;
    case ClassifierKind::NaiveBayes:
      for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) grid.emplace_back().nb_alpha = a;
      break;
    case ClassifierKind::Lda:
      for (double g : {1.0, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0}) grid.emplace_back().lda_shrinkage = g;
      break;
    case ClassifierKind::DiagLda:
      for (double g : {1.0, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0}) grid.emplace_back().dlda_shrinkage = g;
      break;
    case ClassifierKind::Vtt: {
      const double betas[] = {1, 2, 4, 8, 16};
      std::size_t combos = 1;
      for (std::size_t j = 0; j < num_ner_tools; ++j) combos *= std::size(betas);
      for (int q = 0; q < kVttLambdaQuantiles; ++q) {
        for (std::size_t c = 0; c < combos; ++c) {
          HyperParams h;
          h.vtt_lambda_quantile = (q + 0.5) / kVttLambdaQuantiles;
          // Most significant digit first, so beta vectors ascend lexicographically.
          h.vtt_beta.assign(num_ner_tools, 0.0);
          std::size_t rest = c;
          for (std::size_t j = num_ner_tools; j-- > 0;) {
            h.vtt_beta[j] = betas[rest % std::size(betas)];
            rest /= std::size(betas);
          }
          grid.push_back(std::move(h));
        }
      }
      break;
    }
  }
  return grid;
}

PreparedData PreparedData::select_rows(std::span<const std::size_t> rows) const {
  PreparedData out;
  out.features = features.select_rows(rows);
  out.occurrence = occurrence.select_rows(rows);
  out.ner.resize(static_cast<Eigen::Index>(rows.size()), ner.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.ids.push_back(ids[rows[i]]);
    out.labels.push_back(labels[rows[i]]);
    if (ner.cols() > 0) out.ner.row(static_cast<Eigen::Index>(i)) = ner.row(static_cast<Eigen::Index>(rows[i]));
  }
  out.ner_tool_ids = ner_tool_ids;
  return out;
}

TrainingView PreparedData::view() const {
  TrainingView v;
  v.features = &features;
  v.occurrence = &occurrence;
  v.ner = ner.cols() > 0 ? &ner : nullptr;
  v.labels = labels;
  v.ner_tool_ids = ner_tool_ids;
  return v;
}

std::vector<double> PreparedData::ner_row(Eigen::Index r) const {
  std::vector<double> out(static_cast<std::size_t>(ner.cols()));
  for (Eigen::Index j = 0; j < ner.cols(); ++j) out[static_cast<std::size_t>(j)] = ner(r, j);
  return out;
}

FeaturePipeline FeaturePipeline::fit(const ExperimentSpec& spec,
                                     std::span<const TokenizedDocument> train, const NerCounts* ner,
                                     PreparedData* train_out) {
  spec.validate();
  if (!spec.ner_tools.empty() && !ner)
    throw UsageError(spec.name() + ": NER tools requested but no NER counts supplied");
  FeaturePipeline p;
  p.spec_ = spec;
  p.text_vocab_ = build_matrix(train, spec.bigrams).vocab;
  p.vocab_ = p.text_vocab_;
  if (spec.classifier != ClassifierKind::Vtt)
    for (const auto& t : spec.ner_tools) p.vocab_.add("NER:" + t, FeatureKind::NerCount, 0);

  PreparedData data = p.prepare(train, ner);
  const Eigen::Index n = data.features.rows();
  const Eigen::Index dims = data.features.cols();
  std::optional<Eigen::Index> k;
  if (spec.pca_k) {
    k = std::min<Eigen::Index>(*spec.pca_k, std::min(n - 1, dims));
  } else if (spec.classifier == ClassifierKind::Lda && n <= dims) {
    // More dimensions than documents: the pooled covariance is singular, so
    // LDA runs on the data's principal subspace.
    k = std::min(n - 1, dims);
  }
  if (k) {
    if (*k < 1) throw DataError(spec.name() + ": too few training documents for PCA");
    p.pca_ = pca_fit(data.features, *k);
    data.features = Matrix(pca_project(*p.pca_, data.features));
  }
  if (train_out) *train_out = std::move(data);
  return p;
}

FeaturePipeline FeaturePipeline::restore(ExperimentSpec spec, Vocabulary text_vocab,
                                         std::optional<PcaModel> pca) {
  spec.validate();
  FeaturePipeline p;
  p.spec_ = std::move(spec);
  p.text_vocab_ = std::move(text_vocab);
  p.vocab_ = p.text_vocab_;
  if (p.spec_.classifier != ClassifierKind::Vtt)
    for (const auto& t : p.spec_.ner_tools) p.vocab_.add("NER:" + t, FeatureKind::NerCount, 0);
  const Eigen::Index width = p.vocab_.size();
  if (pca && pca->input_dim() != width)
    throw DataError("pipeline: PCA expects " + std::to_string(pca->input_dim()) + " inputs, vocabulary has " +
                    std::to_string(width));
  p.pca_ = std::move(pca);
  return p;
}

PreparedData FeaturePipeline::transform(std::span<const TokenizedDocument> docs, const NerCounts* ner) const {
  PreparedData data = prepare(docs, ner);
  if (pca_) data.features = Matrix(pca_project(*pca_, data.features));
  return data;
}

std::optional<Eigen::Index> FeaturePipeline::effective_pca_k() const {
  if (!pca_) return std::nullopt;
  return pca_->k();
}

PreparedData FeaturePipeline::prepare(std::span<const TokenizedDocument> docs, const NerCounts* ner) const {
  FeaturizedCorpus fc = build_matrix(docs, spec_.bigrams, &text_vocab_);
  PreparedData data;
  data.occurrence = fc.matrix.values;
  data.ids = fc.matrix.ids;
  data.labels = fc.matrix.labels;
  OccurrenceMatrix transformed =
      apply_transform(fc.matrix, text_vocab_, spec_.transform, spec_.tfidf_denominator, fc.token_counts);
  if (!spec_.ner_tools.empty()) {
    if (spec_.classifier == ClassifierKind::Vtt) {
      data.ner = ner->subset(spec_.ner_tools).aligned(data.ids);
      data.ner_tool_ids = spec_.ner_tools;
    } else {
      transformed = append_ner_features(transformed, nullptr, *ner, spec_.ner_tools);
    }
  }
  data.features = std::move(transformed.values);
  return data;
}

}  // namespace lintext
