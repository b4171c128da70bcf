#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lintext/corpus.hpp"
#include "lintext/matrix.hpp"

namespace lintext {

enum class FeatureKind { Unigram, Bigram, NerCount };

std::string_view to_string(FeatureKind k);

/// Feature name -> dense column index, plus the training document count c_i of
/// every feature and the training corpus size N used by IDF.
class Vocabulary {
 public:
  Eigen::Index size() const { return static_cast<Eigen::Index>(names_.size()); }
  bool includes_bigrams() const { return bigrams_; }
  std::int64_t num_documents() const { return num_documents_; }

  const std::string& name(Eigen::Index i) const { return names_[static_cast<std::size_t>(i)]; }
  FeatureKind kind(Eigen::Index i) const { return kinds_[static_cast<std::size_t>(i)]; }
  std::int64_t doc_count(Eigen::Index i) const { return doc_counts_[static_cast<std::size_t>(i)]; }
  std::optional<Eigen::Index> find(const std::string& name) const;

  // Number of leading Unigram/Bigram columns; NER columns always follow them.
  Eigen::Index textual_size() const;

  Eigen::Index add(std::string name, FeatureKind kind, std::int64_t doc_count);

  /// FNV-1a over names and kinds, hex encoded. Identifies the column layout
  /// a serialized model expects.
  std::string fingerprint() const;

  static Vocabulary build(std::vector<std::pair<std::string, std::int64_t>> unigrams,
                          std::vector<std::pair<std::string, std::int64_t>> bigrams,
                          std::int64_t num_documents, bool include_bigrams);

  void set_num_documents(std::int64_t n) { num_documents_ = n; }
  void set_includes_bigrams(bool b) { bigrams_ = b; }

 private:
  std::vector<std::string> names_;
  std::vector<FeatureKind> kinds_;
  std::vector<std::int64_t> doc_counts_;
  std::unordered_map<std::string, Eigen::Index> index_;
  std::int64_t num_documents_ = 0;
  bool bigrams_ = false;
};

inline constexpr std::int64_t kMinDocumentCount = 2;

struct FeaturizedCorpus {
  OccurrenceMatrix matrix;
  Vocabulary vocab;
  // In-vocabulary token occurrences per row, repeats included.
  std::vector<double> token_counts;
};

/// Binary occurrence matrix. Without `vocab` a vocabulary is built from
/// `docs` keeping features seen in at least two documents; with `vocab`,
/// out-of-vocabulary features are ignored. Bigrams join adjacent tokens of the
/// same field with a single space.
FeaturizedCorpus build_matrix(std::span<const TokenizedDocument> docs, bool use_bigrams,
                              const Vocabulary* vocab = nullptr);

/// Nonzero cells of textual column i become log(N / (c_i + 1)).
OccurrenceMatrix idf_transform(const OccurrenceMatrix& m, const Vocabulary& vocab);

enum class TfidfDenominator { DistinctFeatures, TokenCount };

/// IDF followed by division of each row by its number of present features
/// (or by its in-vocabulary token count when requested).
OccurrenceMatrix tfidf_transform(const OccurrenceMatrix& m, const Vocabulary& vocab,
                                 TfidfDenominator denom = TfidfDenominator::DistinctFeatures,
                                 std::span<const double> token_counts = {});

OccurrenceMatrix l2_normalize(const OccurrenceMatrix& m);

enum class TransformRegime { None, Idf, Tfidf, Norm, IdfNorm, TfidfNorm };

std::string_view to_string(TransformRegime t);
TransformRegime parse_transform(std::string_view text);
bool uses_length_norm(TransformRegime t);

OccurrenceMatrix apply_transform(const OccurrenceMatrix& m, const Vocabulary& vocab,
                                 TransformRegime regime,
                                 TfidfDenominator denom = TfidfDenominator::DistinctFeatures,
                                 std::span<const double> token_counts = {});

}  // namespace lintext
