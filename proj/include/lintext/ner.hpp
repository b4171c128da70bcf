#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lintext/corpus.hpp"
#include "lintext/features.hpp"

namespace lintext {

/// Case-folded term list of one NER tool or dictionary.
class Dictionary {
 public:
  Dictionary(std::string tool_id, const std::vector<std::string>& terms);

  const std::string& tool_id() const { return tool_id_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::vector<std::string>>& terms() const { return terms_; }

  // Longest term length in tokens.
  std::size_t max_term_tokens() const { return max_tokens_; }
  bool contains(std::span<const std::string> tokens) const;

 private:
  std::string tool_id_;
  std::vector<std::vector<std::string>> terms_;  // sorted, unique
  std::size_t max_tokens_ = 0;
};

/// One term per line; '#' starts a comment line; blank lines are ignored.
/// The tool id defaults to the file stem.
Dictionary load_dictionary(const std::filesystem::path& path, std::string tool_id = {});

enum class CountMode { Occurrences, DistinctTerms };

/// Lowercase word tokens for dictionary matching: runs of ASCII letters and
/// digits, with accents folded. No stemming or digit masking.
std::vector<std::string> match_tokens(std::string_view text);

/// Non-overlapping, case-insensitive, token-aligned matches in the title and
/// abstract, scanning left to right and taking the longest term at each
/// position.
long count_matches(const Dictionary& dict, const Document& doc,
                   CountMode mode = CountMode::Occurrences);

/// Doc id -> counts, one column per tool, tool order fixed.
struct NerCounts {
  std::vector<std::string> tool_ids;
  std::map<std::string, std::vector<double>> by_doc;

  std::size_t num_tools() const { return tool_ids.size(); }
  /// Rows aligned to `ids`; throws DataError when an id is missing.
  DenseMatrix aligned(std::span<const std::string> ids) const;
  NerCounts subset(std::span<const std::string> tools) const;
  void add_column(const std::string& tool_id, const std::map<std::string, double>& column);
};

NerCounts count_corpus(std::span<const Dictionary> dicts, const Corpus& corpus,
                       CountMode mode = CountMode::Occurrences);

/// CSV "doc_id,count" (an optional header row naming doc_id is skipped).
/// Every id must belong to `corpus`, no id may repeat, counts must be
/// nonnegative integers, and every corpus document must be covered.
std::map<std::string, double> load_external_counts(const std::filesystem::path& path,
                                                   const Corpus& corpus);

void write_counts_csv(std::ostream& out, const NerCounts& counts, std::span<const std::string> ids);
NerCounts read_counts_csv(std::istream& in);

/// Appends one raw-count column per selected tool and records the columns in
/// the vocabulary (when given) as NerCount features named "NER:<tool>".
OccurrenceMatrix append_ner_features(const OccurrenceMatrix& m, Vocabulary* vocab,
                                     const NerCounts& counts, std::span<const std::string> tools);

}  // namespace lintext
