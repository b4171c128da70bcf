#include "lintext/corpus.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lintext/porter.hpp"

namespace lintext {

using nlohmann::json;

std::string_view to_string(Label l) {
  return l == Label::Relevant ? "Relevant" : "Irrelevant";
}

Label parse_label(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "relevant" || lower == "1" || lower == "true" || lower == "positive")
    return Label::Relevant;
  if (lower == "irrelevant" || lower == "0" || lower == "false" || lower == "negative")
    return Label::Irrelevant;
  throw DataError("unrecognised label '" + std::string(text) + "'");
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::Title: return "title";
    case Field::Abstract: return "abstract_text";
    case Field::Journal: return "journal";
    case Field::Author: return "authors";
    case Field::Mesh: return "mesh_terms";
    case Field::RegistryNumber: return "rn_codes";
    case Field::SecondarySource: return "si_codes";
  }
  return "?";
}

namespace {

Field parse_field(std::string_view name) {
  for (Field f : {Field::Title, Field::Abstract, Field::Journal, Field::Author, Field::Mesh,
                  Field::RegistryNumber, Field::SecondarySource})
    if (to_string(f) == name) return f;
  throw DataError("unknown field '" + std::string(name) + "'");
}

[[noreturn]] void record_error(std::size_t line_no, const std::string& what) {
  throw DataError("corpus line " + std::to_string(line_no) + ": " + what);
}

std::string required_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) record_error(line_no, std::string("missing field '") + key + "'");
  if (!it->is_string()) record_error(line_no, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::string optional_string(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) record_error(line_no, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> optional_list(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_array()) record_error(line_no, std::string("field '") + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) record_error(line_no, std::string("field '") + key + "' must be a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

// Latin-1 supplement U+00C0..U+00FF; empty entries are separators.
constexpr std::array<std::string_view, 64> kLatin1Fold = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O", "",  "O", "U", "U", "U", "U", "Y", "TH", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "",  "o", "u", "u", "u", "u", "y", "th", "y",
};

bool is_plain_word(std::string_view token) {
  for (char c : token)
    if (c < 'a' || c > 'z') return false;
  return true;
}

void append_field(TokenizedDocument& out, Field field, std::vector<std::string> tokens) {
  if (!tokens.empty()) out.fields.push_back({field, std::move(tokens)});
}

std::vector<std::string> stemmed(std::string_view text) {
  auto tokens = split_tokens(text);
  for (auto& t : tokens)
    if (is_plain_word(t)) t = porter_stem(t);
  return tokens;
}

}  // namespace

std::string fold_to_ascii(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const auto c = static_cast<unsigned char>(utf8[i]);
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    std::size_t len = 1;
    char32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool valid = len > 1 && i + len <= utf8.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(utf8[i + k]);
      if ((cc & 0xC0) != 0x80) valid = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!valid) {
      out.push_back(' ');
      ++i;
      continue;
    }
    if (cp >= 0xC0 && cp <= 0xFF && !kLatin1Fold[cp - 0xC0].empty())
      out.append(kLatin1Fold[cp - 0xC0]);
    else
      out.push_back(' ');
    i += len;
  }
  return out;
}

std::vector<std::string> split_tokens(std::string_view text) {
  const std::string ascii = fold_to_ascii(text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 || current == "#") tokens.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < ascii.size(); ++i) {
    const auto c = static_cast<unsigned char>(ascii[i]);
    if (std::isdigit(c)) {
      if (current != "#") {
        flush();
        current = "#";
      }
    } else if (std::isalpha(c)) {
      if (current == "#") flush();
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

TokenizedDocument tokenize(const Document& doc) {
  TokenizedDocument out;
  out.id = doc.id;
  out.label = doc.label;
  append_field(out, Field::Title, stemmed(doc.title));
  append_field(out, Field::Abstract, stemmed(doc.abstract_text));
  append_field(out, Field::Journal, stemmed(doc.journal));
  for (const auto& author : doc.authors) {
    auto tokens = split_tokens(author);
    for (auto& t : tokens) t.insert(0, kAuthorPrefix);
    append_field(out, Field::Author, std::move(tokens));
  }
  for (const auto& rn : doc.rn_codes) append_field(out, Field::RegistryNumber, stemmed(rn));
  for (const auto& si : doc.si_codes) append_field(out, Field::SecondarySource, stemmed(si));
  for (const auto& term : doc.mesh_terms) {
    std::string_view t = term;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    if (!t.empty()) out.mesh_tokens.push_back(std::string(kMeshPrefix) + std::string(t));
  }
  return out;
}

std::vector<std::string> TokenizedDocument::all_tokens() const {
  std::vector<std::string> out;
  for (const auto& f : fields) out.insert(out.end(), f.tokens.begin(), f.tokens.end());
  out.insert(out.end(), mesh_tokens.begin(), mesh_tokens.end());
  return out;
}

Document document_from_json_line(const std::string& line, std::size_t line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    record_error(line_no, std::string("invalid JSON (") + e.what() + ")");
  }
  if (!obj.is_object()) record_error(line_no, "record is not a JSON object");

  Document doc;
  doc.id = required_string(obj, "id", line_no);
  if (doc.id.empty()) record_error(line_no, "field 'id' is empty");
  auto lab = obj.find("label");
  if (lab == obj.end() || lab->is_null()) record_error(line_no, "missing field 'label'");
  try {
    if (lab->is_string())
      doc.label = parse_label(lab->get<std::string>());
    else if (lab->is_boolean())
      doc.label = lab->get<bool>() ? Label::Relevant : Label::Irrelevant;
    else if (lab->is_number_integer())
      doc.label = parse_label(std::to_string(lab->get<long long>()));
    else
      record_error(line_no, "field 'label' has an unsupported type");
  } catch (const DataError& e) {
    if (std::string_view(e.what()).starts_with("corpus line")) throw;
    record_error(line_no, e.what());
  }
  doc.title = required_string(obj, "title", line_no);
  doc.abstract_text = optional_string(obj, "abstract_text", line_no);
  doc.authors = optional_list(obj, "authors", line_no);
  doc.journal = optional_string(obj, "journal", line_no);
  doc.mesh_terms = optional_list(obj, "mesh_terms", line_no);
  doc.rn_codes = optional_list(obj, "rn_codes", line_no);
  doc.si_codes = optional_list(obj, "si_codes", line_no);
  return doc;
}

std::string document_to_json_line(const Document& doc) {
  json obj = {
      {"id", doc.id},
      {"label", std::string(to_string(doc.label))},
      {"title", doc.title},
      {"abstract_text", doc.abstract_text},
      {"authors", doc.authors},
      {"journal", doc.journal},
      {"mesh_terms", doc.mesh_terms},
      {"rn_codes", doc.rn_codes},
      {"si_codes", doc.si_codes},
  };
  return obj.dump();
}

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Document doc = document_from_json_line(line, line_no);
    if (!seen.insert(doc.id).second) record_error(line_no, "duplicate id '" + doc.id + "'");
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  return parse_corpus(in);
}

std::string tokenized_to_json_line(const TokenizedDocument& doc) {
  json fields = json::array();
  for (const auto& f : doc.fields)
    fields.push_back({{"field", std::string(to_string(f.field))}, {"tokens", f.tokens}});
  json obj = {{"id", doc.id},
              {"label", std::string(to_string(doc.label))},
              {"fields", fields},
              {"mesh_tokens", doc.mesh_tokens}};
  return obj.dump();
}

TokenizedDocument tokenized_from_json_line(const std::string& line, std::size_t line_no) {
  try {
    const json obj = json::parse(line);
    TokenizedDocument doc;
    doc.id = obj.at("id").get<std::string>();
    doc.label = parse_label(obj.at("label").get<std::string>());
    for (const auto& f : obj.at("fields"))
      doc.fields.push_back({parse_field(f.at("field").get<std::string>()),
                            f.at("tokens").get<std::vector<std::string>>()});
    doc.mesh_tokens = obj.at("mesh_tokens").get<std::vector<std::string>>();
    return doc;
  } catch (const json::exception& e) {
    record_error(line_no, std::string("malformed token record (") + e.what() + ")");
  }
}

}  // namespace lintext
