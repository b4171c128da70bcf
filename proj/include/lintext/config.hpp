#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lintext/harness.hpp"

namespace lintext {

inline constexpr int kConfigVersion = 1;

/// Experiment configuration. The file format is line-based "key = value"
/// with '#' comments; list values are comma separated. NER sets are
/// separated by ';' and name their tools joined by '+' ("none" is the empty
/// set). Relative paths are resolved against the file's directory.
struct ExperimentConfig {
  int version = kConfigVersion;
  std::filesystem::path corpus;
  std::filesystem::path output = "lintext-out";
  std::uint64_t seed = 42;
  int repeats = 4;
  int folds = 4;
  unsigned threads = 1;

  std::vector<ClassifierKind> classifiers{ClassifierKind::Vtt, ClassifierKind::Svm, ClassifierKind::LogReg,
                                          ClassifierKind::Lda};
  std::vector<TransformRegime> transforms{TransformRegime::None, TransformRegime::Idf, TransformRegime::Tfidf,
                                          TransformRegime::IdfNorm, TransformRegime::TfidfNorm};
  std::vector<std::optional<int>> pca{std::nullopt};
  std::vector<bool> bigrams{false};
  std::vector<std::vector<std::string>> ner_sets{{}};
  std::vector<std::filesystem::path> dictionaries;  // counted on the fly
  std::vector<std::filesystem::path> ner_counts;     // CSV files from `lintext ner`
  TfidfDenominator tfidf_denominator = TfidfDenominator::DistinctFeatures;

  // Grid overrides; unset keys fall back to default_grid().
  std::optional<std::vector<double>> svm_c;
  std::optional<std::vector<double>> logreg_c;
  std::optional<std::vector<double>> nb_alpha;
  std::optional<std::vector<double>> lda_shrinkage;
  std::optional<std::vector<double>> dlda_shrinkage;
  std::optional<int> vtt_lambda_quantiles;
  std::optional<std::vector<double>> vtt_beta;

  /// Applies one "key = value" assignment; throws UsageError on unknown keys
  /// or bad values.
  void set(const std::string& key, const std::string& value, const std::filesystem::path& base_dir = {});

  std::vector<HyperParams> grid_for(ClassifierKind kind, std::size_t num_ner_tools) const;
  /// Every non-forbidden combination of the configured axes, with grids.
  std::vector<ExperimentSpec> specs() const;

  /// Canonical text form; parsing it back gives the same config.
  std::string to_text() const;
  /// FNV-1a of the settings that affect results (not output dir or threads).
  std::string hash() const;
};

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(std::string_view text);

}  // namespace lintext
