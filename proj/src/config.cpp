#include "lintext/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lintext/model_io.hpp"

namespace lintext {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(key + ": '" + text + "' is not a number");
  return v;
}

long parse_long(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != static_cast<double>(static_cast<long>(v))) throw UsageError(key + ": '" + text + "' is not an integer");
  return static_cast<long>(v);
}

std::vector<double> parse_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split(value, ',')) out.push_back(parse_double(key, item));
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw UsageError(key + ": '" + text + "' is not a boolean");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest form that still parses back exactly.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::stod(shorter) == v) return shorter;
  }
  return buf;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_relative() && !base.empty() ? base / p : p;
}

}  // namespace

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ExperimentConfig::set(const std::string& key, const std::string& value, const std::filesystem::path& base) {
  if (key == "version") {
    version = static_cast<int>(parse_long(key, value));
    if (version != kConfigVersion)
      throw UsageError("unsupported config version " + value + " (this build reads version " +
                       std::to_string(kConfigVersion) + ")");
  } else if (key == "corpus") {
    corpus = resolve(base, value);
  } else if (key == "output") {
    output = resolve(base, value);
  } else if (key == "seed") {
    const long s = parse_long(key, value);
    if (s < 0) throw UsageError("seed must be nonnegative");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "repeats" || key == "folds") {
    const long v = parse_long(key, value);
    if (v < 2 && key == "folds") throw UsageError("folds must be >= 2");
    if (v < 1) throw UsageError(key + " must be >= 1");
    (key == "repeats" ? repeats : folds) = static_cast<int>(v);
  } else if (key == "threads") {
    const long v = parse_long(key, value);
    if (v < 1) throw UsageError("threads must be >= 1");
    threads = static_cast<unsigned>(v);
  } else if (key == "classifiers") {
    classifiers.clear();
    for (const auto& s : split(value, ',')) classifiers.push_back(parse_classifier(s));
  } else if (key == "transforms") {
    transforms.clear();
    for (const auto& s : split(value, ',')) transforms.push_back(parse_transform(s));
  } else if (key == "pca") {
    pca.clear();
    for (const auto& s : split(value, ',')) {
      if (s == "none") {
        pca.push_back(std::nullopt);
      } else {
        const long k = parse_long(key, s);
        if (k < 1) throw UsageError("pca components must be >= 1");
        pca.push_back(static_cast<int>(k));
      }
    }
  } else if (key == "bigrams") {
    bigrams.clear();
    for (const auto& s : split(value, ',')) bigrams.push_back(parse_bool(key, s));
  } else if (key == "ner_sets") {
    ner_sets.clear();
    for (const auto& set : split(value, ';')) {
      if (set.empty() || set == "none") {
        ner_sets.emplace_back();
        continue;
      }
      std::vector<std::string> tools = split(set, '+');
      for (const auto& t : tools)
        if (t.empty()) throw UsageError("ner_sets: empty tool name in '" + set + "'");
      ner_sets.push_back(std::move(tools));
    }
  } else if (key == "dictionaries" || key == "ner_counts") {
    auto& list = key == "dictionaries" ? dictionaries : ner_counts;
    list.clear();
    for (const auto& s : split(value, ','))
      if (!s.empty()) list.push_back(resolve(base, s));
  } else if (key == "tfidf_denominator") {
    tfidf_denominator = parse_tfidf_denominator(value);
  } else if (key == "grid.svm_c") {
    svm_c = parse_doubles(key, value);
  } else if (key == "grid.logreg_c") {
    logreg_c = parse_doubles(key, value);
  } else if (key == "grid.nb_alpha") {
    nb_alpha = parse_doubles(key, value);
  } else if (key == "grid.lda_shrinkage") {
    lda_shrinkage = parse_doubles(key, value);
  } else if (key == "grid.dlda_shrinkage") {
    dlda_shrinkage = parse_doubles(key, value);
  } else if (key == "grid.vtt_lambda_quantiles") {
    const long q = parse_long(key, value);
    if (q < 1) throw UsageError(key + " must be >= 1");
    vtt_lambda_quantiles = static_cast<int>(q);
  } else if (key == "grid.vtt_beta") {
    vtt_beta = parse_doubles(key, value);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

std::vector<HyperParams> ExperimentConfig::grid_for(ClassifierKind kind, std::size_t num_ner_tools) const {
  auto one_axis = [](const std::vector<double>& values, auto member) {
    std::vector<HyperParams> grid;
    for (double v : values) grid.emplace_back().*member = v;
    return grid;
  };
  switch (kind) {
    case ClassifierKind::Svm:
      if (svm_c) return one_axis(*svm_c, &HyperParams::svm_c);
      break;
    case ClassifierKind::LogReg:
      if (logreg_c) return one_axis(*logreg_c, &HyperParams::logreg_c);
      break;
    case ClassifierKind::NaiveBayes:
      if (nb_alpha) return one_axis(*nb_alpha, &HyperParams::nb_alpha);
      break;
    case ClassifierKind::Lda:
      if (lda_shrinkage) return one_axis(*lda_shrinkage, &HyperParams::lda_shrinkage);
      break;
    case ClassifierKind::DiagLda:
      if (dlda_shrinkage) return one_axis(*dlda_shrinkage, &HyperParams::dlda_shrinkage);
      break;
    case ClassifierKind::Vtt:
      if (vtt_lambda_quantiles || vtt_beta) {
        const int levels = vtt_lambda_quantiles.value_or(kVttLambdaQuantiles);
        const std::vector<double> betas = vtt_beta.value_or(std::vector<double>{1, 2, 4, 8, 16});
        std::vector<HyperParams> grid;
        std::size_t combos = 1;
        for (std::size_t j = 0; j < num_ner_tools; ++j) combos *= betas.size();
        for (int q = 0; q < levels; ++q)
          for (std::size_t c = 0; c < combos; ++c) {
            HyperParams h;
            h.vtt_lambda_quantile = (q + 0.5) / levels;
            h.vtt_beta.assign(num_ner_tools, 0.0);
            std::size_t rest = c;
            for (std::size_t j = num_ner_tools; j-- > 0;) {
              h.vtt_beta[j] = betas[rest % betas.size()];
              rest /= betas.size();
            }
            grid.push_back(std::move(h));
          }
        return grid;
      }
      break;
  }
  return default_grid(kind, num_ner_tools);
}

std::vector<ExperimentSpec> ExperimentConfig::specs() const {
  ExperimentSpec base;
  base.seed = seed;
  base.tfidf_denominator = tfidf_denominator;
  GridAxes axes{classifiers, transforms, pca, bigrams, ner_sets};
  std::vector<ExperimentSpec> out = expand_grid(axes, base);
  for (auto& s : out) s.grid = grid_for(s.classifier, s.ner_tools.size());
  return out;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "version = " << version << '\n';
  os << "corpus = " << corpus.string() << '\n';
  os << "output = " << output.string() << '\n';
  os << "seed = " << seed << '\n';
  os << "repeats = " << repeats << '\n';
  os << "folds = " << folds << '\n';
  os << "threads = " << threads << '\n';
  auto list = [&](const char* key, const auto& items, auto&& render, const char* sep = ", ") {
    os << key << " = ";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? sep : "") << render(items[i]);
    os << '\n';
  };
  list("classifiers", classifiers, [](ClassifierKind k) { return std::string(to_string(k)); });
  list("transforms", transforms, [](TransformRegime t) { return std::string(to_string(t)); });
  list("pca", pca, [](const std::optional<int>& k) { return k ? std::to_string(*k) : std::string("none"); });
  list("bigrams", bigrams, [](bool b) { return std::string(b ? "true" : "false"); });
  list("ner_sets", ner_sets, [](const std::vector<std::string>& set) {
    if (set.empty()) return std::string("none");
    std::string s;
    for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "+" : "") + set[i];
    return s;
  }, "; ");
  list("dictionaries", dictionaries, [](const std::filesystem::path& p) { return p.string(); });
  list("ner_counts", ner_counts, [](const std::filesystem::path& p) { return p.string(); });
  os << "tfidf_denominator = " << to_string(tfidf_denominator) << '\n';
  if (svm_c) os << "grid.svm_c = " << join_doubles(*svm_c) << '\n';
  if (logreg_c) os << "grid.logreg_c = " << join_doubles(*logreg_c) << '\n';
  if (nb_alpha) os << "grid.nb_alpha = " << join_doubles(*nb_alpha) << '\n';
  if (lda_shrinkage) os << "grid.lda_shrinkage = " << join_doubles(*lda_shrinkage) << '\n';
  if (dlda_shrinkage) os << "grid.dlda_shrinkage = " << join_doubles(*dlda_shrinkage) << '\n';
  if (vtt_lambda_quantiles) os << "grid.vtt_lambda_quantiles = " << *vtt_lambda_quantiles << '\n';
  if (vtt_beta) os << "grid.vtt_beta = " << join_doubles(*vtt_beta) << '\n';
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::string text;
  std::istringstream in(to_text());
  for (std::string line; std::getline(in, line);)
    if (line.rfind("output =", 0) != 0 && line.rfind("threads =", 0) != 0) text += line + '\n';
  return fnv1a_hex(text);
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  bool saw_version = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    try {
      cfg.set(key, value, base_dir);
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
    saw_version |= key == "version";
  }
  if (!saw_version) throw UsageError("config: missing 'version' key");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

}  // namespace lintext
