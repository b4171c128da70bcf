// lintext: command-line front end for the text classification library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lintext/config.hpp"
#include "lintext/model_io.hpp"
#include "lintext/report.hpp"

namespace fs = std::filesystem;
using namespace lintext;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void require_file(const fs::path& p, const std::string& what) {
  if (p.empty()) throw UsageError(what + " path is required");
  if (!fs::is_regular_file(p)) throw UsageError(what + " '" + p.string() + "' does not exist");
}

std::vector<TokenizedDocument> tokenize_all(const Corpus& corpus) {
  std::vector<TokenizedDocument> docs;
  docs.reserve(corpus.size());
  for (const auto& d : corpus) docs.push_back(tokenize(d));
  return docs;
}

std::vector<TokenizedDocument> load_tokenized(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<TokenizedDocument> docs;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    docs.push_back(tokenized_from_json_line(line, line_no));
  }
  return docs;
}

void merge_counts(NerCounts& into, const NerCounts& more) {
  for (std::size_t t = 0; t < more.tool_ids.size(); ++t) {
    std::map<std::string, double> column;
    for (const auto& [id, row] : more.by_doc) column.emplace(id, row[t]);
    into.add_column(more.tool_ids[t], column);
  }
}

/// Counts from dictionaries (matched here) and from CSV files written by
/// `lintext ner`, merged into one table.
std::optional<NerCounts> gather_counts(const Corpus& corpus, const std::vector<fs::path>& dictionaries,
                                       const std::vector<fs::path>& count_files, CountMode mode) {
  if (dictionaries.empty() && count_files.empty()) return std::nullopt;
  NerCounts all;
  if (!dictionaries.empty()) {
    std::vector<Dictionary> dicts;
    for (const auto& p : dictionaries) dicts.push_back(load_dictionary(p));
    merge_counts(all, count_corpus(dicts, corpus, mode));
  }
  for (const auto& p : count_files) {
    std::ifstream in(p);
    if (!in) throw DataError("cannot open counts file " + p.string());
    merge_counts(all, read_counts_csv(in));
  }
  return all;
}

std::vector<std::string> split_tools(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, '+');)
    if (!t.empty()) out.push_back(t);
  return out;
}

std::optional<int> parse_pca(const std::string& s) {
  if (s.empty() || s == "none") return std::nullopt;
  try {
    std::size_t used = 0;
    const int k = std::stoi(s, &used);
    if (used == s.size() && k >= 1) return k;
  } catch (const std::exception&) {
  }
  throw UsageError("--pca expects a positive integer or 'none', got '" + s + "'");
}

// Options shared by featurize and train.
struct FeatureOptions {
  fs::path corpus;
  bool bigrams = false;
  std::string transform = "none";
  std::string pca = "none";
  std::string tfidf_denominator = "distinct";
  std::vector<fs::path> dictionaries;
  std::vector<fs::path> ner_counts;
  std::string ner_tools;

  void add_to(CLI::App* app) {
    app->add_option("--corpus", corpus, "JSONL corpus")->required();
    app->add_flag("--bigrams", bigrams, "Add bigram features");
    app->add_option("--transform", transform, "none, idf, tfidf, norm, idf+norm or tfidf+norm")
        ->capture_default_str();
    app->add_option("--pca", pca, "Number of principal components, or none")->capture_default_str();
    app->add_option("--tfidf-denominator", tfidf_denominator, "distinct or tokens")->capture_default_str();
    app->add_option("--dict", dictionaries, "Dictionary file to count matches with (repeatable)");
    app->add_option("--ner-counts", ner_counts, "Counts CSV written by 'lintext ner' (repeatable)");
    app->add_option("--ner-tools", ner_tools, "NER tools to use as features, joined by '+'");
  }

  void validate_paths() const {
    require_file(corpus, "corpus");
    for (const auto& p : dictionaries) require_file(p, "dictionary");
    for (const auto& p : ner_counts) require_file(p, "counts file");
  }

  ExperimentSpec spec(ClassifierKind kind) const {
    ExperimentSpec s;
    s.classifier = kind;
    s.transform = parse_transform(transform);
    s.pca_k = parse_pca(pca);
    s.bigrams = bigrams;
    s.ner_tools = split_tools(ner_tools);
    s.tfidf_denominator = parse_tfidf_denominator(tfidf_denominator);
    return s;
  }
};

// ---- ingest -----------------------------------------------------------------

int cmd_ingest(const fs::path& corpus_path, const fs::path& out_path) {
  require_file(corpus_path, "corpus");
  const Corpus corpus = load_corpus(corpus_path);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot write " + out_path.string());
  std::size_t pos = 0;
  for (const auto& d : corpus) {
    out << tokenized_to_json_line(tokenize(d)) << '\n';
    pos += is_positive(d.label);
  }
  std::cerr << "tokenized " << corpus.size() << " documents (" << pos << " relevant, " << corpus.size() - pos
            << " irrelevant)\n";
  return 0;
}

// ---- featurize --------------------------------------------------------------

int cmd_featurize(const FeatureOptions& opts, const fs::path& out_dir, std::size_t top) {
  opts.validate_paths();
  // Any classifier that allows the requested combination will do; only the
  // feature side of the spec is used.
  ExperimentSpec spec = opts.spec(ClassifierKind::Svm);
  spec.validate();
  const Corpus corpus = load_corpus(opts.corpus);
  if (corpus.empty()) throw DataError("corpus is empty");
  const auto docs = tokenize_all(corpus);
  const auto counts = gather_counts(corpus, opts.dictionaries, opts.ner_counts, CountMode::Occurrences);

  PreparedData data;
  const FeaturePipeline pipeline = FeaturePipeline::fit(spec, docs, counts ? &*counts : nullptr, &data);

  std::ostringstream triplets;
  triplets << "row,col,value\n";
  char buf[32];
  data.features.visit([&](const auto& m) {
    using M = std::decay_t<decltype(m)>;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if constexpr (std::is_same_v<M, SparseMatrix>) {
        for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
          std::snprintf(buf, sizeof buf, "%.17g", it.value());
          triplets << r << ',' << it.col() << ',' << buf << '\n';
        }
      } else {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          if (m(r, c) == 0.0) continue;
          std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
          triplets << r << ',' << c << ',' << buf << '\n';
        }
      }
    }
  });
  write_file(out_dir, "matrix.csv", triplets.str());

  std::ostringstream vocab;
  vocab << "feature\tindex\tdoc_count\tkind\n";
  const Vocabulary& v = pipeline.vocabulary();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    vocab << v.name(i) << '\t' << i << '\t' << v.doc_count(i) << '\t' << to_string(v.kind(i)) << '\n';
  write_file(out_dir, "vocab.tsv", vocab.str());

  std::ostringstream rows;
  rows << "row\tid\tlabel\n";
  for (std::size_t r = 0; r < data.ids.size(); ++r) rows << r << '\t' << data.ids[r] << '\t' << to_string(data.labels[r]) << '\n';
  write_file(out_dir, "rows.tsv", rows.str());

  if (top > 0) {
    OccurrenceMatrix occ{data.occurrence, data.ids, data.labels};
    std::ostringstream table;
    write_top_features(table, rank_by_information_gain(occ, pipeline.text_vocabulary()), top);
    write_file(out_dir, "top_features.tsv", table.str());
  }
  std::cerr << data.features.rows() << " rows x " << data.features.cols() << " columns written to "
            << out_dir.string() << '\n';
  return 0;
}

// ---- ner --------------------------------------------------------------------

int cmd_ner(const fs::path& corpus_path, const std::vector<fs::path>& dicts, const std::vector<std::string>& external,
            const std::string& mode_name, const fs::path& out_path) {
  require_file(corpus_path, "corpus");
  for (const auto& d : dicts) require_file(d, "dictionary");
  std::vector<std::pair<std::string, fs::path>> ext;
  for (const auto& e : external) {
    const auto eq = e.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--external expects TOOL=FILE, got '" + e + "'");
    ext.emplace_back(e.substr(0, eq), e.substr(eq + 1));
    require_file(ext.back().second, "counts file");
  }
  if (dicts.empty() && ext.empty()) throw UsageError("ner needs at least one --dict or --external");
  CountMode mode;
  if (mode_name == "occurrences") mode = CountMode::Occurrences;
  else if (mode_name == "distinct") mode = CountMode::DistinctTerms;
  else throw UsageError("--mode expects occurrences or distinct");

  const Corpus corpus = load_corpus(corpus_path);
  NerCounts counts;
  if (!dicts.empty()) merge_counts(counts, *gather_counts(corpus, dicts, {}, mode));
  for (const auto& [tool, path] : ext) counts.add_column(tool, load_external_counts(path, corpus));

  std::vector<std::string> ids;
  for (const auto& d : corpus) ids.push_back(d.id);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot write " + out_path.string());
  write_counts_csv(out, counts, ids);
  return 0;
}

// ---- train / predict --------------------------------------------------------

struct TrainOptions {
  FeatureOptions features;
  std::string classifier = "svm";
  fs::path model_out = "model.json";
  std::uint64_t seed = 42;
  bool select = false;
  std::optional<double> c, alpha, shrinkage, lambda, lambda_quantile;
  std::vector<double> beta;
};

int cmd_train(const TrainOptions& o) {
  o.features.validate_paths();
  const ClassifierKind kind = parse_classifier(o.classifier);
  ExperimentSpec spec = o.features.spec(kind);
  spec.seed = o.seed;
  spec.validate();

  HyperParams params;
  if (o.c) params.svm_c = params.logreg_c = *o.c;
  if (o.alpha) params.nb_alpha = *o.alpha;
  if (o.shrinkage) params.lda_shrinkage = params.dlda_shrinkage = *o.shrinkage;
  if (o.lambda) params.vtt_lambda = *o.lambda;
  if (o.lambda_quantile) params.vtt_lambda_quantile = *o.lambda_quantile;
  params.vtt_beta = o.beta;
  if (kind == ClassifierKind::Vtt && params.vtt_beta.empty()) params.vtt_beta.assign(spec.ner_tools.size(), 1.0);
  if (kind == ClassifierKind::Vtt && !o.lambda && !o.lambda_quantile) params.vtt_lambda_quantile = 0.5;
  params.validate(kind);

  const Corpus corpus = load_corpus(o.features.corpus);
  const auto docs = tokenize_all(corpus);
  const auto counts = gather_counts(corpus, o.features.dictionaries, o.features.ner_counts, CountMode::Occurrences);
  PreparedData data;
  FeaturePipeline pipeline = FeaturePipeline::fit(spec, docs, counts ? &*counts : nullptr, &data);

  if (o.select) {
    const std::vector<Split> inner = stratified_splits(data.labels, mix_seed(o.seed, 1000), 4, 4);
    const SelectionResult sel = inner_select(kind, spec.effective_grid(), data, inner);
    params = sel.chosen;
    std::cerr << "selected " << describe(kind, params) << " (mean inner MCC " << sel.mean_mcc[sel.index] << ")\n";
  }
  Model model = make_trainer(kind, data.view())->fit(params);
  save_model(o.model_out, SavedModel{std::move(pipeline), std::move(model), params});
  return 0;
}

int cmd_predict(const fs::path& model_path, const fs::path& corpus_path, const std::vector<fs::path>& dictionaries,
                const std::vector<fs::path>& count_files, const fs::path& out_path) {
  require_file(model_path, "model");
  require_file(corpus_path, "corpus");
  for (const auto& p : dictionaries) require_file(p, "dictionary");
  for (const auto& p : count_files) require_file(p, "counts file");
  const SavedModel saved = load_model(model_path);
  const Corpus corpus = load_corpus(corpus_path);
  const auto docs = tokenize_all(corpus);
  const auto counts = gather_counts(corpus, dictionaries, count_files, CountMode::Occurrences);
  if (!saved.pipeline.spec().ner_tools.empty() && !counts)
    throw UsageError("this model uses NER counts; pass --dict or --ner-counts");
  const PreparedData data = saved.pipeline.transform(docs, counts ? &*counts : nullptr);
  const std::vector<double> scores = score_rows(saved.model, data);

  std::ostringstream os;
  os << "id,score,label\n";
  char buf[32];
  for (std::size_t r = 0; r < scores.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.10g", scores[r]);
    os << data.ids[r] << ',' << buf << ',' << to_string(label_for_score(scores[r])) << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path);
    out << os.str();
    if (!out) throw DataError("cannot write " + out_path.string());
  }
  return 0;
}

// ---- run / sweep ------------------------------------------------------------

struct RunFlags {
  fs::path config;
  std::optional<std::uint64_t> seed;
  fs::path corpus;
  fs::path output;
  std::optional<unsigned> threads;
  std::string classifiers, transforms, pca, ner_sets, bigrams;
  bool verbose = false;
};

ExperimentConfig effective_config(const RunFlags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    require_file(f.config, "config");
    cfg = load_config(f.config);
  }
  if (f.seed) cfg.seed = *f.seed;
  if (!f.corpus.empty()) cfg.corpus = f.corpus;
  if (!f.output.empty()) cfg.output = f.output;
  if (f.threads) cfg.set("threads", std::to_string(*f.threads));
  if (!f.classifiers.empty()) cfg.set("classifiers", f.classifiers);
  if (!f.transforms.empty()) cfg.set("transforms", f.transforms);
  if (!f.pca.empty()) cfg.set("pca", f.pca);
  if (!f.ner_sets.empty()) cfg.set("ner_sets", f.ner_sets);
  if (!f.bigrams.empty()) cfg.set("bigrams", f.bigrams);
  require_file(cfg.corpus, "corpus");
  for (const auto& p : cfg.dictionaries) require_file(p, "dictionary");
  for (const auto& p : cfg.ner_counts) require_file(p, "counts file");
  return cfg;
}

int cmd_run(const RunFlags& flags, bool all_metrics) {
  const ExperimentConfig cfg = effective_config(flags);
  const std::vector<ExperimentSpec> specs = cfg.specs();
  if (specs.empty()) std::cerr << "warning: every configured combination is excluded; nothing to run\n";

  const Corpus corpus = load_corpus(cfg.corpus);
  const auto docs = tokenize_all(corpus);
  const auto counts = gather_counts(corpus, cfg.dictionaries, cfg.ner_counts, CountMode::Occurrences);
  std::vector<Label> labels;
  std::vector<std::string> ids;
  for (const auto& d : corpus) {
    labels.push_back(d.label);
    ids.push_back(d.id);
  }
  const FoldPlan plan = make_fold_plan(labels, cfg.seed, cfg.repeats, cfg.folds);

  const Provenance prov{std::string(kToolVersion), cfg.hash()};
  write_file(cfg.output, "config.txt", "# lintext " + prov.version + " config " + prov.config_hash + "\n" + cfg.to_text());
  nlohmann::json plan_json = fold_plan_to_json(plan, ids);
  plan_json["config_hash"] = prov.config_hash;
  write_file(cfg.output, "foldplan.json", plan_json.dump(1) + "\n");

  RunOptions options;
  options.threads = cfg.threads;
  if (flags.verbose) options.log = [](const std::string& msg) { std::cerr << msg << '\n'; };

  SweepResult result;
  for (const auto& spec : specs) {
    std::cerr << "running " << spec.name() << '\n';
    try {
      result.runs.push_back(run_experiment(spec, docs, counts ? &*counts : nullptr, plan, options));
    } catch (const std::exception& e) {
      std::cerr << "skipping " << spec.name() << ": " << e.what() << '\n';
      result.failures.push_back({spec, e.what()});
    }
  }

  std::ostringstream csv;
  write_results_csv(csv, result, prov);
  write_file(cfg.output, "results.csv", csv.str());
  write_file(cfg.output, "results.json", results_to_json(result, prov).dump(1) + "\n");

  std::vector<SummaryRow> rows;
  for (const auto& r : result.runs) rows.push_back(summary_row(r));
  for (Metric m : {Metric::Mcc, Metric::F1, Metric::Iauc}) {
    if (!all_metrics && m != Metric::Mcc) continue;
    std::ostringstream table;
    write_summary_table(table, rows, m);
    write_file(cfg.output, "summary_" + std::string(to_string(m)) + ".txt", table.str());
    std::cout << table.str() << '\n';
  }
  if (!result.failures.empty()) std::cerr << result.failures.size() << " combination(s) failed; see results.json\n";
  return result.runs.empty() && !specs.empty() ? kExitData : 0;
}

// ---- report -----------------------------------------------------------------

int cmd_report(const fs::path& results, const std::string& metric, const fs::path& corpus_path, std::size_t top,
               bool bigrams) {
  if (results.empty() && corpus_path.empty()) throw UsageError("report needs --results and/or --corpus");
  if (!results.empty()) {
    require_file(results, "results file");
    std::ifstream in(results);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DataError("results file: " + std::string(e.what()));
    }
    std::cout << "# lintext " << j.value("version", "?") << " config " << j.value("config_hash", "?") << '\n';
    write_summary_table(std::cout, summary_rows_from_json(j), parse_metric(metric));
  }
  if (!corpus_path.empty()) {
    require_file(corpus_path, "corpus");
    const auto docs = tokenize_all(load_corpus(corpus_path));
    if (docs.empty()) throw DataError("corpus is empty");
    const FeaturizedCorpus fc = build_matrix(docs, bigrams);
    if (!results.empty()) std::cout << '\n';
    write_top_features(std::cout, rank_by_information_gain(fc.matrix, fc.vocab), top);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear text classification of labelled abstracts"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  fs::path ingest_corpus, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Tokenize a JSONL corpus");
  ingest->add_option("--corpus", ingest_corpus, "JSONL corpus")->required();
  ingest->add_option("--out", ingest_out, "Tokenized JSONL output")->required();

  FeatureOptions feat;
  fs::path feat_out = "features";
  std::size_t feat_top = 0;
  auto* featurize = app.add_subcommand("featurize", "Build and dump a feature matrix");
  feat.add_to(featurize);
  featurize->add_option("--out-dir", feat_out, "Output directory")->capture_default_str();
  featurize->add_option("--top-features", feat_top, "Also write the N most informative features");

  fs::path ner_corpus, ner_out = "counts.csv";
  std::vector<fs::path> ner_dicts;
  std::vector<std::string> ner_external;
  std::string ner_mode = "occurrences";
  auto* ner = app.add_subcommand("ner", "Count dictionary matches per document");
  ner->add_option("--corpus", ner_corpus, "JSONL corpus")->required();
  ner->add_option("--dict", ner_dicts, "Dictionary file, one term per line (repeatable)");
  ner->add_option("--external", ner_external, "TOOL=FILE counts from an external tagger (repeatable)");
  ner->add_option("--mode", ner_mode, "occurrences or distinct")->capture_default_str();
  ner->add_option("--out", ner_out, "Counts CSV")->capture_default_str();

  TrainOptions tr;
  auto* train = app.add_subcommand("train", "Train one classifier on a whole corpus");
  tr.features.add_to(train);
  train->add_option("--clf", tr.classifier, "vtt, svm, logreg, nb, lda or dlda")->capture_default_str();
  train->add_option("--model-out", tr.model_out, "Model JSON")->capture_default_str();
  train->add_option("--seed", tr.seed, "Seed for --select splits")->capture_default_str();
  train->add_flag("--select", tr.select, "Pick hyperparameters by 4x4 cross-validation over the default grid");
  train->add_option("--c", tr.c, "SVM / logistic regression C");
  train->add_option("--alpha", tr.alpha, "Naive Bayes Beta prior concentration");
  train->add_option("--shrinkage", tr.shrinkage, "LDA / dLDA shrinkage in [0, 1]");
  train->add_option("--lambda", tr.lambda, "VTT threshold");
  train->add_option("--lambda-quantile", tr.lambda_quantile, "VTT threshold as a training-score quantile");
  train->add_option("--beta", tr.beta, "VTT weight per NER tool");

  fs::path pred_model, pred_corpus, pred_out;
  std::vector<fs::path> pred_dicts, pred_counts;
  auto* predict = app.add_subcommand("predict", "Score documents with a saved model");
  predict->add_option("--model", pred_model, "Model JSON")->required();
  predict->add_option("--corpus", pred_corpus, "JSONL corpus")->required();
  predict->add_option("--dict", pred_dicts, "Dictionary file (repeatable)");
  predict->add_option("--ner-counts", pred_counts, "Counts CSV (repeatable)");
  predict->add_option("--out", pred_out, "CSV output (default stdout)");

  RunFlags rf;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", rf.config, "Experiment config file");
    sub->add_option("--seed", rf.seed, "Seed for the fold plan (overrides config)");
    sub->add_option("--corpus", rf.corpus, "JSONL corpus (overrides config)");
    sub->add_option("--output", rf.output, "Output directory (overrides config)");
    sub->add_option("--threads", rf.threads, "Outer folds run in parallel (overrides config)");
    sub->add_option("--classifiers", rf.classifiers, "Comma-separated classifiers (overrides config)");
    sub->add_option("--transforms", rf.transforms, "Comma-separated transforms (overrides config)");
    sub->add_option("--pca", rf.pca, "Comma-separated PCA sizes or none (overrides config)");
    sub->add_option("--ner-sets", rf.ner_sets, "';'-separated NER tool sets (overrides config)");
    sub->add_option("--bigrams", rf.bigrams, "false, true or both as 'false,true' (overrides config)");
    sub->add_flag("-v,--verbose", rf.verbose, "Log every outer fold");
  };
  auto* run = app.add_subcommand("run", "Nested cross-validation over a config's grid; prints the MCC table");
  add_run_flags(run);
  auto* sweep_cmd = app.add_subcommand("sweep", "As run, writing and printing tables for all three metrics");
  add_run_flags(sweep_cmd);

  fs::path rep_results, rep_corpus;
  std::string rep_metric = "mcc";
  std::size_t rep_top = 10;
  bool rep_bigrams = false;
  auto* report = app.add_subcommand("report", "Summary tables from results.json; information-gain ranking");
  report->add_option("--results", rep_results, "results.json from run or sweep");
  report->add_option("--metric", rep_metric, "f1, mcc or iauc")->capture_default_str();
  report->add_option("--corpus", rep_corpus, "Rank this corpus's features by information gain");
  report->add_option("--top", rep_top, "Features to list")->capture_default_str();
  report->add_flag("--bigrams", rep_bigrams, "Include bigrams in the ranking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_corpus, ingest_out);
    if (*featurize) return cmd_featurize(feat, feat_out, feat_top);
    if (*ner) return cmd_ner(ner_corpus, ner_dicts, ner_external, ner_mode, ner_out);
    if (*train) return cmd_train(tr);
    if (*predict) return cmd_predict(pred_model, pred_corpus, pred_dicts, pred_counts, pred_out);
    if (*run) return cmd_run(rf, false);
    if (*sweep_cmd) return cmd_run(rf, true);
    if (*report) return cmd_report(rep_results, rep_metric, rep_corpus, rep_top, rep_bigrams);
  } catch (const UsageError& e) {
    std::cerr << "lintext: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "lintext: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "lintext: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
