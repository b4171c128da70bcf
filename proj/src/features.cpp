#include "lintext/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace lintext {

std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Unigram: return "unigram";
    case FeatureKind::Bigram: return "bigram";
    case FeatureKind::NerCount: return "ner";
  }
  return "?";
}

std::optional<Eigen::Index> Vocabulary::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::Index Vocabulary::textual_size() const {
  Eigen::Index n = 0;
  while (n < size() && kind(n) != FeatureKind::NerCount) ++n;
  return n;
}

Eigen::Index Vocabulary::add(std::string name, FeatureKind kind, std::int64_t doc_count) {
  if (index_.count(name)) throw DataError("duplicate feature '" + name + "'");
  const auto idx = size();
  index_.emplace(name, idx);
  names_.push_back(std::move(name));
  kinds_.push_back(kind);
  doc_counts_.push_back(doc_count);
  return idx;
}

std::string Vocabulary::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (char c : names_[i]) mix(static_cast<unsigned char>(c));
    mix(0);
    mix(static_cast<unsigned char>(kinds_[i]));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Vocabulary Vocabulary::build(std::vector<std::pair<std::string, std::int64_t>> unigrams,
                             std::vector<std::pair<std::string, std::int64_t>> bigrams,
                             std::int64_t num_documents, bool include_bigrams) {
  Vocabulary v;
  v.num_documents_ = num_documents;
  v.bigrams_ = include_bigrams;
  std::sort(unigrams.begin(), unigrams.end());
  std::sort(bigrams.begin(), bigrams.end());
  for (auto& [name, c] : unigrams)
    if (c >= kMinDocumentCount) v.add(std::move(name), FeatureKind::Unigram, c);
  if (include_bigrams)
    for (auto& [name, c] : bigrams)
      if (c >= kMinDocumentCount) v.add(std::move(name), FeatureKind::Bigram, c);
  return v;
}

namespace {

// Distinct unigram and bigram features of one document, with total
// occurrence counts.
struct DocFeatures {
  std::map<std::string, int> unigrams;
  std::map<std::string, int> bigrams;
};

DocFeatures collect(const TokenizedDocument& doc, bool use_bigrams) {
  DocFeatures out;
  for (const auto& field : doc.fields) {
    for (std::size_t i = 0; i < field.tokens.size(); ++i) {
      ++out.unigrams[field.tokens[i]];
      if (use_bigrams && i + 1 < field.tokens.size())
        ++out.bigrams[field.tokens[i] + " " + field.tokens[i + 1]];
    }
  }
  for (const auto& t : doc.mesh_tokens) ++out.unigrams[t];
  return out;
}

}  // namespace

FeaturizedCorpus build_matrix(std::span<const TokenizedDocument> docs, bool use_bigrams,
                              const Vocabulary* vocab) {
  if (vocab && vocab->includes_bigrams() != use_bigrams)
    throw DataError(std::string("vocabulary kind mismatch: vocabulary ") +
                    (vocab->includes_bigrams() ? "includes" : "excludes") +
                    " bigrams but the request " + (use_bigrams ? "includes" : "excludes") +
                    " them");
  if (!vocab && docs.empty()) throw DataError("cannot build a vocabulary from zero documents");

  std::vector<DocFeatures> per_doc;
  per_doc.reserve(docs.size());
  for (const auto& d : docs) per_doc.push_back(collect(d, use_bigrams));

  FeaturizedCorpus out;
  if (vocab) {
    out.vocab = *vocab;
  } else {
    std::map<std::string, std::int64_t> uni, bi;
    for (const auto& f : per_doc) {
      for (const auto& [name, n] : f.unigrams) ++uni[name];
      for (const auto& [name, n] : f.bigrams) ++bi[name];
    }
    out.vocab = Vocabulary::build({uni.begin(), uni.end()}, {bi.begin(), bi.end()},
                                  static_cast<std::int64_t>(docs.size()), use_bigrams);
  }

  const auto n_rows = static_cast<Eigen::Index>(docs.size());
  SparseMatrix m(n_rows, out.vocab.size());
  out.token_counts.assign(docs.size(), 0.0);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& f = per_doc[static_cast<std::size_t>(r)];
    cols.clear();
    auto take = [&](const std::map<std::string, int>& src) {
      for (const auto& [name, n] : src) {
        if (auto idx = out.vocab.find(name)) {
          if (out.vocab.kind(*idx) == FeatureKind::NerCount) continue;
          cols.push_back(*idx);
          out.token_counts[static_cast<std::size_t>(r)] += n;
        }
      }
    };
    take(f.unigrams);
    if (use_bigrams) take(f.bigrams);
    std::sort(cols.begin(), cols.end());
    m.startVec(r);
    for (auto c : cols) m.insertBack(r, c) = 1.0;
  }
  m.finalize();

  out.matrix.values = Matrix(std::move(m));
  for (const auto& d : docs) {
    out.matrix.ids.push_back(d.id);
    out.matrix.labels.push_back(d.label);
  }
  return out;
}

namespace {

SparseMatrix sparse_or_throw(const OccurrenceMatrix& m, const char* op) {
  if (!m.values.is_sparse()) throw UsageError(std::string(op) + " expects a sparse occurrence matrix");
  return m.values.sparse();
}

}  // namespace

OccurrenceMatrix idf_transform(const OccurrenceMatrix& m, const Vocabulary& vocab) {
  SparseMatrix s = sparse_or_throw(m, "idf_transform");
  if (s.cols() != vocab.size()) throw DataError("idf_transform: matrix/vocabulary size mismatch");
  const double n = static_cast<double>(vocab.num_documents());
  Vector idf(vocab.size());
  for (Eigen::Index i = 0; i < vocab.size(); ++i)
    idf[i] = std::log(n / static_cast<double>(vocab.doc_count(i) + 1));
  for (Eigen::Index r = 0; r < s.rows(); ++r)
    for (SparseMatrix::InnerIterator it(s, r); it; ++it)
      if (it.value() != 0.0 && vocab.kind(it.col()) != FeatureKind::NerCount) it.valueRef() = idf[it.col()];
  OccurrenceMatrix out{Matrix(std::move(s)), m.ids, m.labels};
  return out;
}

OccurrenceMatrix tfidf_transform(const OccurrenceMatrix& m, const Vocabulary& vocab,
                                 TfidfDenominator denom, std::span<const double> token_counts) {
  if (denom == TfidfDenominator::TokenCount &&
      token_counts.size() != static_cast<std::size_t>(m.rows()))
    throw DataError("tfidf_transform: token counts not aligned with matrix rows");
  const SparseMatrix& original = sparse_or_throw(m, "tfidf_transform");
  OccurrenceMatrix out = idf_transform(m, vocab);
  SparseMatrix s = out.values.sparse();
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    double count = 0.0;
    if (denom == TfidfDenominator::TokenCount) {
      count = token_counts[static_cast<std::size_t>(r)];
    } else {
      for (SparseMatrix::InnerIterator it(original, r); it; ++it)
        if (it.value() != 0.0 && vocab.kind(it.col()) != FeatureKind::NerCount) count += 1.0;
    }
    if (count == 0.0) continue;
    for (SparseMatrix::InnerIterator it(s, r); it; ++it)
      if (vocab.kind(it.col()) != FeatureKind::NerCount) it.valueRef() /= count;
  }
  out.values = Matrix(std::move(s));
  return out;
}

OccurrenceMatrix l2_normalize(const OccurrenceMatrix& m) {
  OccurrenceMatrix out = m;
  if (m.values.is_sparse()) {
    SparseMatrix s = m.values.sparse();
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
      double sq = 0.0;
      for (SparseMatrix::InnerIterator it(s, r); it; ++it) sq += it.value() * it.value();
      if (sq == 0.0) continue;
      const double norm = std::sqrt(sq);
      for (SparseMatrix::InnerIterator it(s, r); it; ++it) it.valueRef() /= norm;
    }
    out.values = Matrix(std::move(s));
  } else {
    DenseMatrix d = m.values.dense();
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
      const double norm = d.row(r).norm();
      if (norm > 0.0) d.row(r) /= norm;
    }
    out.values = Matrix(std::move(d));
  }
  return out;
}

std::string_view to_string(TransformRegime t) {
  switch (t) {
    case TransformRegime::None: return "none";
    case TransformRegime::Idf: return "idf";
    case TransformRegime::Tfidf: return "tfidf";
    case TransformRegime::Norm: return "norm";
    case TransformRegime::IdfNorm: return "idf+norm";
    case TransformRegime::TfidfNorm: return "tfidf+norm";
  }
  return "?";
}

TransformRegime parse_transform(std::string_view text) {
  for (auto t : {TransformRegime::None, TransformRegime::Idf, TransformRegime::Tfidf,
                 TransformRegime::Norm, TransformRegime::IdfNorm, TransformRegime::TfidfNorm})
    if (to_string(t) == text) return t;
  if (text == "-") return TransformRegime::None;
  throw UsageError("unknown transform '" + std::string(text) +
                   "' (expected none, idf, tfidf, norm, idf+norm or tfidf+norm)");
}

bool uses_length_norm(TransformRegime t) {
  return t == TransformRegime::Norm || t == TransformRegime::IdfNorm ||
         t == TransformRegime::TfidfNorm;
}

OccurrenceMatrix apply_transform(const OccurrenceMatrix& m, const Vocabulary& vocab,
                                 TransformRegime regime, TfidfDenominator denom,
                                 std::span<const double> token_counts) {
  switch (regime) {
    case TransformRegime::None: return m;
    case TransformRegime::Idf: return idf_transform(m, vocab);
    case TransformRegime::Tfidf: return tfidf_transform(m, vocab, denom, token_counts);
    case TransformRegime::Norm: return l2_normalize(m);
    case TransformRegime::IdfNorm: return l2_normalize(idf_transform(m, vocab));
    case TransformRegime::TfidfNorm:
      return l2_normalize(tfidf_transform(m, vocab, denom, token_counts));
  }
  return m;
}

}  // namespace lintext
