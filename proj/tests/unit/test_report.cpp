#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "lintext/report.hpp"
#include "lintext/synthetic.hpp"

using namespace lintext;
using doctest::Approx;

TEST_CASE("information gain arithmetic") {
  CHECK(information_gain_bits(50, 0, 0, 50) == Approx(1.0).epsilon(1e-15));
  CHECK(information_gain_bits(0, 50, 50, 0) == Approx(1.0).epsilon(1e-15));
  CHECK(information_gain_bits(10, 10, 10, 10) == 0.0);
  CHECK(information_gain_bits(0, 0, 0, 0) == 0.0);
  // H(Y) = 1, H(Y|X) = 0.5 H(0.8) with X splitting 40/40 of 80.
  const double h = -(0.8 * std::log2(0.8) + 0.2 * std::log2(0.2));
  CHECK(information_gain_bits(32, 8, 8, 32) == Approx(1.0 - h).epsilon(1e-14));
}

TEST_CASE("planted features rank first") {
  SyntheticConfig cfg;
  cfg.num_documents = 400;
  cfg.vocabulary_size = 400;
  cfg.planted = 3;
  cfg.noise_min_rate = 0.02;
  std::vector<TokenizedDocument> docs;
  for (const auto& d : make_synthetic_corpus(cfg)) docs.push_back(tokenize(d));
  const FeaturizedCorpus f = build_matrix(docs, false);
  const auto ranked = rank_by_information_gain(f.matrix, f.vocab);
  REQUIRE(ranked.size() == static_cast<std::size_t>(f.vocab.size()));
  std::set<std::string> top;
  for (int i = 0; i < 3; ++i) top.insert(ranked[static_cast<std::size_t>(i)].name);
  CHECK(top == std::set<std::string>{planted_word(0), planted_word(1), planted_word(2)});
  for (std::size_t i = 1; i < ranked.size(); ++i) CHECK(ranked[i - 1].information_gain >= ranked[i].information_gain);
}

TEST_CASE("random labels carry almost no information") {
  SyntheticConfig cfg;
  cfg.num_documents = 2000;
  cfg.vocabulary_size = 200;
  cfg.signal_strength = 0.0;
  cfg.noise_min_rate = 0.05;
  std::vector<TokenizedDocument> docs;
  for (const auto& d : make_synthetic_corpus(cfg)) docs.push_back(tokenize(d));
  const FeaturizedCorpus f = build_matrix(docs, false);
  for (const auto& r : rank_by_information_gain(f.matrix, f.vocab)) CHECK(r.information_gain < 0.01);
}

TEST_CASE("summary table layout") {
  std::vector<SummaryRow> rows;
  for (std::string clf : {"svm", "lda"})
    for (std::string t : {"none", "idf"}) {
      SummaryRow r;
      r.classifier = clf;
      r.transform = t;
      r.pca_k = "none";
      r.ngrams = "unigram";
      r.ner_set = "none";
      r.mcc = {clf == "svm" ? 0.9 : 0.8, 0.01};
      rows.push_back(r);
    }
  std::ostringstream out;
  write_summary_table(out, rows, Metric::Mcc);
  const std::string s = out.str();
  CHECK(s.find("0.900 (0.010)") != std::string::npos);
  CHECK(s.find("svm") < s.find("lda"));
  CHECK(s.find("none") < s.find("idf"));
  CHECK(parse_metric("iauc") == Metric::Iauc);
  CHECK_THROWS_AS(parse_metric("auc"), UsageError);
}

TEST_CASE("results csv and json agree") {
  SyntheticConfig cfg;
  cfg.num_documents = 60;
  cfg.vocabulary_size = 200;
  cfg.noise_min_rate = 0.02;
  std::vector<TokenizedDocument> docs;
  for (const auto& d : make_synthetic_corpus(cfg)) docs.push_back(tokenize(d));
  ExperimentSpec spec;
  spec.classifier = ClassifierKind::NaiveBayes;
  const std::vector<ExperimentSpec> specs = {spec};
  const SweepResult r = sweep(specs, docs, nullptr);
  const Provenance prov{std::string(kToolVersion), "abc123"};

  std::ostringstream csv;
  write_results_csv(csv, r, prov);
  const std::string text = csv.str();
  CHECK(text.rfind("# lintext " + std::string(kToolVersion) + " config abc123\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 1 + 16 + 1);
  CHECK(text.find(",mean,") != std::string::npos);

  const auto rows = summary_rows_from_json(results_to_json(r, prov));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].classifier == "nb");
  CHECK(rows[0].mcc.mean == Approx(r.runs[0].mcc.mean).epsilon(1e-12));
}
