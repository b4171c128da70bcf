#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lintext/common.hpp"

namespace lintext {

struct Document {
  std::string id;
  Label label = Label::Irrelevant;
  std::string title;
  std::string abstract_text;
  std::vector<std::string> authors;
  std::string journal;
  std::vector<std::string> mesh_terms;
  std::vector<std::string> rn_codes;
  std::vector<std::string> si_codes;
};

using Corpus = std::vector<Document>;

enum class Field { Title, Abstract, Journal, Author, Mesh, RegistryNumber, SecondarySource };

std::string_view to_string(Field f);

// Tokens of one source field. Bigrams are formed inside a field only.
struct TokenField {
  Field field;
  std::vector<std::string> tokens;
};

struct TokenizedDocument {
  std::string id;
  Label label = Label::Irrelevant;
  std::vector<TokenField> fields;     // text-like fields, in source order
  std::vector<std::string> mesh_tokens;  // "MeSH:<term>", one per term

  // Every token of every field followed by the MeSH tokens.
  std::vector<std::string> all_tokens() const;
};

inline constexpr std::string_view kMeshPrefix = "MeSH:";
inline constexpr std::string_view kAuthorPrefix = "AU:";

/// Reads a JSON Lines corpus. Blank lines are skipped. Throws DataError on a
/// malformed record (naming its line) or a duplicate id.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in);

Document document_from_json_line(const std::string& line, std::size_t line_no);
std::string document_to_json_line(const Document& doc);

/// Lowercases, masks digit runs as '#', drops tokens shorter than two
/// characters (the '#' mask itself is kept), and Porter-stems the title,
/// abstract, journal, RN and SI fields. Author tokens are prefixed "AU:" and
/// left unstemmed; each MeSH term becomes one "MeSH:<term>" token.
TokenizedDocument tokenize(const Document& doc);

/// Splits text into lowercase letter runs; every digit run becomes its own
/// "#" token.
/// Non-ASCII letters are folded to ASCII where a plain equivalent exists.
std::vector<std::string> split_tokens(std::string_view text);

/// Replaces Latin-1 accented letters with ASCII; any other
/// non-ASCII code point becomes a space.
std::string fold_to_ascii(std::string_view utf8);

std::string tokenized_to_json_line(const TokenizedDocument& doc);
TokenizedDocument tokenized_from_json_line(const std::string& line, std::size_t line_no);

}  // namespace lintext
