#include "lintext/ner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lintext {
namespace {

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_count(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw DataError("counts line " + std::to_string(line_no) + ": '" + text + "' is not an integer count");
  if (v < 0) throw DataError("counts line " + std::to_string(line_no) + ": negative count " + text);
  return static_cast<double>(v);
}

}  // namespace

std::vector<std::string> match_tokens(std::string_view text) {
  const std::string ascii = fold_to_ascii(text);
  std::vector<std::string> out;
  std::string cur;
  for (char ch : ascii) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Dictionary::Dictionary(std::string tool_id, const std::vector<std::string>& terms)
    : tool_id_(std::move(tool_id)) {
  std::set<std::vector<std::string>> unique;
  for (const auto& t : terms) {
    auto tokens = match_tokens(t);
    if (!tokens.empty()) unique.insert(std::move(tokens));
  }
  if (unique.empty()) throw DataError("dictionary '" + tool_id_ + "' has no terms");
  terms_.assign(unique.begin(), unique.end());
  for (const auto& t : terms_) max_tokens_ = std::max(max_tokens_, t.size());
}

bool Dictionary::contains(std::span<const std::string> tokens) const {
  return std::binary_search(terms_.begin(), terms_.end(), tokens,
                            [](const auto& a, const auto& b) {
                              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                            });
}

Dictionary load_dictionary(const std::filesystem::path& path, std::string tool_id) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dictionary " + path.string());
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    terms.push_back(t);
  }
  if (tool_id.empty()) tool_id = path.stem().string();
  if (terms.empty()) throw DataError("dictionary " + path.string() + " has no terms");
  return Dictionary(std::move(tool_id), terms);
}

long count_matches(const Dictionary& dict, const Document& doc, CountMode mode) {
  long count = 0;
  std::set<std::string> distinct;
  for (const std::string* text : {&doc.title, &doc.abstract_text}) {
    const auto tokens = match_tokens(*text);
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t matched = 0;
      const std::size_t longest = std::min(dict.max_term_tokens(), tokens.size() - i);
      for (std::size_t len = longest; len >= 1; --len) {
        if (dict.contains(std::span(tokens).subspan(i, len))) {
          matched = len;
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      ++count;
      if (mode == CountMode::DistinctTerms)
        distinct.insert(join_tokens(std::span(tokens).subspan(i, matched)));
      i += matched;
    }
  }
  return mode == CountMode::DistinctTerms ? static_cast<long>(distinct.size()) : count;
}

DenseMatrix NerCounts::aligned(std::span<const std::string> ids) const {
  DenseMatrix out(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(num_tools()));
  for (std::size_t r = 0; r < ids.size(); ++r) {
    auto it = by_doc.find(ids[r]);
    if (it == by_doc.end()) throw DataError("no NER counts for document '" + ids[r] + "'");
    for (std::size_t j = 0; j < num_tools(); ++j)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = it->second[j];
  }
  return out;
}

NerCounts NerCounts::subset(std::span<const std::string> tools) const {
  NerCounts out;
  std::vector<std::size_t> cols;
  for (const auto& t : tools) {
    auto it = std::find(tool_ids.begin(), tool_ids.end(), t);
    if (it == tool_ids.end()) throw DataError("unknown NER tool '" + t + "'");
    cols.push_back(static_cast<std::size_t>(it - tool_ids.begin()));
    out.tool_ids.push_back(t);
  }
  for (const auto& [id, row] : by_doc) {
    std::vector<double> v;
    for (auto c : cols) v.push_back(row[c]);
    out.by_doc.emplace(id, std::move(v));
  }
  return out;
}

void NerCounts::add_column(const std::string& tool_id, const std::map<std::string, double>& column) {
  if (std::find(tool_ids.begin(), tool_ids.end(), tool_id) != tool_ids.end())
    throw DataError("NER tool '" + tool_id + "' added twice");
  if (!tool_ids.empty() && column.size() != by_doc.size())
    throw DataError("NER tool '" + tool_id + "' covers a different set of documents");
  for (const auto& [id, v] : column) {
    auto& row = by_doc[id];
    if (row.size() != tool_ids.size())
      throw DataError("NER tool '" + tool_id + "' covers unknown document '" + id + "'");
    row.push_back(v);
  }
  tool_ids.push_back(tool_id);
}

NerCounts count_corpus(std::span<const Dictionary> dicts, const Corpus& corpus, CountMode mode) {
  NerCounts out;
  for (const auto& d : dicts) out.tool_ids.push_back(d.tool_id());
  for (const auto& doc : corpus) {
    std::vector<double> row;
    for (const auto& d : dicts) row.push_back(static_cast<double>(count_matches(d, doc, mode)));
    out.by_doc.emplace(doc.id, std::move(row));
  }
  return out;
}

std::map<std::string, double> load_external_counts(const std::filesystem::path& path,
                                                   const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open counts file " + path.string());
  std::unordered_set<std::string> known;
  for (const auto& d : corpus) known.insert(d.id);
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (line_no == 1 && !cells.empty() && cells[0] == "doc_id") continue;
    if (cells.size() != 2)
      throw DataError("counts line " + std::to_string(line_no) + ": expected 'doc_id,count'");
    if (!known.count(cells[0]))
      throw DataError("counts line " + std::to_string(line_no) + ": unknown document id '" + cells[0] + "'");
    const double v = parse_count(cells[1], line_no);
    if (!out.emplace(cells[0], v).second)
      throw DataError("counts line " + std::to_string(line_no) + ": duplicate document id '" + cells[0] + "'");
  }
  for (const auto& d : corpus)
    if (!out.count(d.id)) throw DataError("counts file " + path.string() + " has no entry for '" + d.id + "'");
  return out;
}

void write_counts_csv(std::ostream& out, const NerCounts& counts, std::span<const std::string> ids) {
  out << "doc_id";
  for (const auto& t : counts.tool_ids) out << ',' << t;
  out << '\n';
  for (const auto& id : ids) {
    out << id;
    for (double v : counts.by_doc.at(id)) out << ',' << static_cast<long long>(v);
    out << '\n';
  }
}

NerCounts read_counts_csv(std::istream& in) {
  NerCounts out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (line_no == 1) {
      if (cells.empty() || cells[0] != "doc_id") throw DataError("counts CSV must start with a doc_id header");
      out.tool_ids.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.size() != out.tool_ids.size() + 1)
      throw DataError("counts line " + std::to_string(line_no) + ": wrong number of columns");
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_count(cells[j], line_no));
    if (!out.by_doc.emplace(cells[0], std::move(row)).second)
      throw DataError("counts line " + std::to_string(line_no) + ": duplicate document id '" + cells[0] + "'");
  }
  return out;
}

OccurrenceMatrix append_ner_features(const OccurrenceMatrix& m, Vocabulary* vocab,
                                     const NerCounts& counts, std::span<const std::string> tools) {
  if (tools.empty()) return m;
  if (!m.values.is_sparse()) throw UsageError("append_ner_features expects a sparse matrix");
  const NerCounts selected = counts.subset(tools);
  const DenseMatrix extra = selected.aligned(m.ids);
  const SparseMatrix& s = m.values.sparse();
  const Eigen::Index base = s.cols();
  const auto j_count = static_cast<Eigen::Index>(tools.size());

  if (vocab) {
    for (Eigen::Index j = 0; j < j_count; ++j) {
      const std::string name = "NER:" + tools[static_cast<std::size_t>(j)];
      if (auto idx = vocab->find(name)) {
        if (*idx != base + j) throw DataError("NER feature '" + name + "' is at an unexpected column");
        continue;
      }
      if (vocab->size() != base + j) throw DataError("vocabulary does not match matrix width");
      vocab->add(name, FeatureKind::NerCount, (extra.col(j).array() > 0).count());
    }
  }

  SparseMatrix out(s.rows(), base + j_count);
  out.reserve(s.nonZeros() + s.rows() * j_count);
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    out.startVec(r);
    for (SparseMatrix::InnerIterator it(s, r); it; ++it) out.insertBack(r, it.col()) = it.value();
    for (Eigen::Index j = 0; j < j_count; ++j)
      if (extra(r, j) != 0.0) out.insertBack(r, base + j) = extra(r, j);
  }
  out.finalize();
  return {Matrix(std::move(out)), m.ids, m.labels};
}

}  // namespace lintext
