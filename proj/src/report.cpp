#include "lintext/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace lintext {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::json summary_json(const Summary& s) { return {{"mean", s.mean}, {"se", s.std_error}}; }

Summary summary_from(const nlohmann::json& j) {
  return {j.at("mean").get<double>(), j.at("se").get<double>()};
}

double xlog2(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

SummaryRow summary_row(const RunResult& run) {
  SummaryRow row;
  row.classifier = to_string(run.spec.classifier);
  row.transform = to_string(run.spec.transform);
  row.pca_k = run.spec.pca_label();
  row.ngrams = run.spec.ngram_label();
  row.ner_set = run.spec.ner_label();
  row.f1 = run.f1;
  row.mcc = run.mcc;
  row.iauc = run.iauc;
  return row;
}

void write_results_csv(std::ostream& out, const SweepResult& sweep, const Provenance& prov) {
  out << "# lintext " << prov.version << " config " << prov.config_hash << '\n';
  out << "classifier,transform,pca_k,ngrams,ner_set,fold,chosen,f1,mcc,iauc,f1_se,mcc_se,iauc_se\n";
  for (const auto& run : sweep.runs) {
    const SummaryRow s = summary_row(run);
    const std::string prefix = s.classifier + ',' + s.transform + ',' + s.pca_k + ',' + s.ngrams + ',' +
                               csv_field(s.ner_set) + ',';
    for (std::size_t f = 0; f < run.folds.size(); ++f) {
      const FoldResult& fr = run.folds[f];
      out << prefix << f << ',' << csv_field(fr.chosen_label) << ',' << num(fr.f1) << ',' << num(fr.mcc)
          << ',' << num(fr.iauc) << ",,,\n";
    }
    out << prefix << "mean,," << num(s.f1.mean) << ',' << num(s.mcc.mean) << ',' << num(s.iauc.mean) << ','
        << num(s.f1.std_error) << ',' << num(s.mcc.std_error) << ',' << num(s.iauc.std_error) << '\n';
  }
}

nlohmann::json results_to_json(const SweepResult& sweep, const Provenance& prov) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : sweep.runs) {
    const SummaryRow s = summary_row(run);
    nlohmann::json folds = nlohmann::json::array();
    for (const auto& fr : run.folds) {
      nlohmann::json jf = {{"repeat", fr.repeat},     {"block", fr.block},
                           {"chosen", fr.chosen_label}, {"inner_mcc", fr.inner_mcc},
                           {"f1", fr.f1},             {"f1_undefined", fr.f1_undefined},
                           {"mcc", fr.mcc},           {"iauc", fr.iauc}};
      jf["pca_k"] = fr.pca_k ? nlohmann::json(*fr.pca_k) : nlohmann::json(nullptr);
      folds.push_back(std::move(jf));
    }
    runs.push_back({{"name", run.spec.name()},
                    {"classifier", s.classifier},
                    {"transform", s.transform},
                    {"pca_k", s.pca_k},
                    {"ngrams", s.ngrams},
                    {"ner_set", s.ner_set},
                    {"seed", run.spec.seed},
                    {"trainings", run.trainings},
                    {"folds", std::move(folds)},
                    {"summary", {{"f1", summary_json(s.f1)}, {"mcc", summary_json(s.mcc)}, {"iauc", summary_json(s.iauc)}}}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : sweep.failures) failures.push_back({{"name", f.spec.name()}, {"error", f.message}});
  return {{"tool", "lintext"},
          {"version", prov.version},
          {"config_hash", prov.config_hash},
          {"runs", std::move(runs)},
          {"failures", std::move(failures)}};
}

std::vector<SummaryRow> summary_rows_from_json(const nlohmann::json& results) {
  std::vector<SummaryRow> rows;
  try {
    for (const auto& run : results.at("runs")) {
      SummaryRow r;
      r.classifier = run.at("classifier").get<std::string>();
      r.transform = run.at("transform").get<std::string>();
      r.pca_k = run.at("pca_k").get<std::string>();
      r.ngrams = run.at("ngrams").get<std::string>();
      r.ner_set = run.at("ner_set").get<std::string>();
      const auto& s = run.at("summary");
      r.f1 = summary_from(s.at("f1"));
      r.mcc = summary_from(s.at("mcc"));
      r.iauc = summary_from(s.at("iauc"));
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("results file: ") + e.what());
  }
  return rows;
}

Metric parse_metric(std::string_view text) {
  if (text == "f1") return Metric::F1;
  if (text == "mcc") return Metric::Mcc;
  if (text == "iauc") return Metric::Iauc;
  throw UsageError("unknown metric '" + std::string(text) + "' (expected f1, mcc or iauc)");
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::F1: return "f1";
    case Metric::Mcc: return "mcc";
    case Metric::Iauc: return "iauc";
  }
  return "?";
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows, Metric metric) {
  // Settings shared by every row are left out of the column labels.
  auto varies = [&](auto field) {
    return std::any_of(rows.begin(), rows.end(), [&](const SummaryRow& r) { return field(r) != field(rows.front()); });
  };
  const bool show_pca = varies([](const SummaryRow& r) { return r.pca_k; });
  const bool show_ngrams = varies([](const SummaryRow& r) { return r.ngrams; });
  const bool show_ner = varies([](const SummaryRow& r) { return r.ner_set; });

  std::vector<std::string> row_keys;
  std::vector<std::string> col_keys;
  std::map<std::pair<std::string, std::string>, std::string> cells;
  for (const auto& r : rows) {
    std::string col = r.transform;
    if (show_pca) col += " pca=" + r.pca_k;
    if (show_ngrams) col += " " + r.ngrams;
    if (show_ner) col += " ner=" + r.ner_set;
    if (std::find(row_keys.begin(), row_keys.end(), r.classifier) == row_keys.end()) row_keys.push_back(r.classifier);
    if (std::find(col_keys.begin(), col_keys.end(), col) == col_keys.end()) col_keys.push_back(col);
    const Summary& s = metric == Metric::F1 ? r.f1 : metric == Metric::Mcc ? r.mcc : r.iauc;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f (%.3f)", s.mean, s.std_error);
    cells[{r.classifier, col}] = buf;
  }
  std::size_t first = std::string(to_string(metric)).size();
  for (const auto& k : row_keys) first = std::max(first, k.size());
  std::vector<std::size_t> widths;
  for (const auto& c : col_keys) widths.push_back(std::max<std::size_t>(c.size(), 13));

  auto emit = [&](std::string line) {
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  };
  auto pad = [&](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  std::string header = pad(std::string(to_string(metric)), first);
  for (std::size_t c = 0; c < col_keys.size(); ++c) header += "  " + pad(col_keys[c], widths[c]);
  emit(header);
  for (const auto& rk : row_keys) {
    std::string line = pad(rk, first);
    for (std::size_t c = 0; c < col_keys.size(); ++c) {
      auto it = cells.find({rk, col_keys[c]});
      line += "  " + pad(it == cells.end() ? "-" : it->second, widths[c]);
    }
    emit(line);
  }
}

double information_gain_bits(std::int64_t pos_with, std::int64_t pos_without, std::int64_t neg_with,
                             std::int64_t neg_without) {
  const double n = static_cast<double>(pos_with + pos_without + neg_with + neg_without);
  if (n == 0) return 0.0;
  const double joint[2][2] = {{static_cast<double>(pos_with) / n, static_cast<double>(pos_without) / n},
                              {static_cast<double>(neg_with) / n, static_cast<double>(neg_without) / n}};
  const double py[2] = {joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
  const double px[2] = {joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};
  // I(X;Y) = H(X) + H(Y) - H(X,Y)
  double h = 0.0;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) h += xlog2(joint[y][x]);
  const double hx = -(xlog2(px[0]) + xlog2(px[1]));
  const double hy = -(xlog2(py[0]) + xlog2(py[1]));
  return std::max(0.0, hx + hy + h);
}

std::vector<RankedFeature> rank_by_information_gain(const OccurrenceMatrix& m, const Vocabulary& vocab) {
  if (m.cols() != vocab.size()) throw DataError("information gain: matrix and vocabulary differ in width");
  if (!m.values.is_binary()) throw DataError("information gain: matrix is not binary");
  const auto k = static_cast<std::size_t>(m.cols());
  std::vector<std::int64_t> pos(k, 0), neg(k, 0);
  const std::int64_t total_pos = static_cast<std::int64_t>(count_positive(m.labels));
  const std::int64_t total_neg = static_cast<std::int64_t>(m.labels.size()) - total_pos;
  m.values.visit([&](const auto& mat) {
    using M = std::decay_t<decltype(mat)>;
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      auto& counts = is_positive(m.labels[static_cast<std::size_t>(r)]) ? pos : neg;
      if constexpr (std::is_same_v<M, SparseMatrix>) {
        for (SparseMatrix::InnerIterator it(mat, r); it; ++it)
          if (it.value() != 0.0) ++counts[static_cast<std::size_t>(it.col())];
      } else {
        for (Eigen::Index c = 0; c < mat.cols(); ++c)
          if (mat(r, c) != 0.0) ++counts[static_cast<std::size_t>(c)];
      }
    }
  });
  std::vector<RankedFeature> ranked(k);
  for (std::size_t i = 0; i < k; ++i) {
    ranked[i].name = vocab.name(static_cast<Eigen::Index>(i));
    ranked[i].positive_docs = pos[i];
    ranked[i].negative_docs = neg[i];
    ranked[i].information_gain = information_gain_bits(pos[i], total_pos - pos[i], neg[i], total_neg - neg[i]);
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.information_gain != b.information_gain) return a.information_gain > b.information_gain;
    return a.name < b.name;
  });
  return ranked;
}

void write_top_features(std::ostream& out, const std::vector<RankedFeature>& ranked, std::size_t top) {
  out << "rank\tfeature\tinformation_gain_bits\tpositive_docs\tnegative_docs\n";
  for (std::size_t i = 0; i < std::min(top, ranked.size()); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", ranked[i].information_gain);
    out << i + 1 << '\t' << ranked[i].name << '\t' << buf << '\t' << ranked[i].positive_docs << '\t'
        << ranked[i].negative_docs << '\n';
  }
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw DataError("cannot write " + path.string());
}

}  // namespace lintext
