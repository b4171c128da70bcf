#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lintext/harness.hpp"

namespace lintext {

inline constexpr std::string_view kToolVersion = "0.3.1";

/// Written at the top of every report.
struct Provenance {
  std::string version{kToolVersion};
  std::string config_hash;
};

/// Mean and standard error of each metric for one spec.
struct SummaryRow {
  std::string classifier;
  std::string transform;
  std::string pca_k;
  std::string ngrams;
  std::string ner_set;
  Summary f1;
  Summary mcc;
  Summary iauc;
};

SummaryRow summary_row(const RunResult& run);

/// One row per (spec, fold) followed by one "mean" row per spec carrying
/// the standard errors.
void write_results_csv(std::ostream& out, const SweepResult& sweep, const Provenance& prov);
nlohmann::json results_to_json(const SweepResult& sweep, const Provenance& prov);

/// The summary rows stored in a results JSON document.
std::vector<SummaryRow> summary_rows_from_json(const nlohmann::json& results);

enum class Metric { F1, Mcc, Iauc };
Metric parse_metric(std::string_view text);
std::string_view to_string(Metric m);

/// Classifiers down, remaining spec settings across; cells are "mean (se)".
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows, Metric metric);

struct RankedFeature {
  std::string name;
  double information_gain = 0.0;  // bits
  std::int64_t positive_docs = 0;
  std::int64_t negative_docs = 0;
};

/// Mutual information between each binary column and the label, in bits,
/// sorted descending (ties by name).
std::vector<RankedFeature> rank_by_information_gain(const OccurrenceMatrix& m, const Vocabulary& vocab);

/// I(X; Y) in bits for binary X and Y given the 2x2 joint counts.
double information_gain_bits(std::int64_t pos_with, std::int64_t pos_without, std::int64_t neg_with,
                             std::int64_t neg_without);

void write_top_features(std::ostream& out, const std::vector<RankedFeature>& ranked, std::size_t top);

/// Writes `text` to dir/name, throwing DataError when the file cannot be written.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text);

}  // namespace lintext
