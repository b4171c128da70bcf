#include <doctest.h>

#include <sstream>

#include "lintext/corpus.hpp"

using namespace lintext;

namespace {

std::vector<std::string> field_tokens(const TokenizedDocument& d, Field f) {
  std::vector<std::string> out;
  for (const auto& tf : d.fields)
    if (tf.field == f) out.insert(out.end(), tf.tokens.begin(), tf.tokens.end());
  return out;
}

Document doc_with_abstract(std::string text) {
  Document d;
  d.id = "d";
  d.abstract_text = std::move(text);
  return d;
}

}  // namespace

TEST_CASE("tokenize masks digit runs and stems") {
  CHECK(field_tokens(tokenize(doc_with_abstract("5 mg daily")), Field::Abstract) ==
        std::vector<std::string>{"#", "mg", "daili"});
  CHECK(field_tokens(tokenize(doc_with_abstract("crossover studies")), Field::Abstract) ==
        std::vector<std::string>{"crossov", "studi"});
  // The lone "a" between two digit runs is too short to keep.
  CHECK(field_tokens(tokenize(doc_with_abstract("CYP3A4 and 1,200 subjects")), Field::Abstract) ==
        std::vector<std::string>{"cyp", "#", "#", "and", "#", "#", "subject"});
}

TEST_CASE("tokenize keeps MeSH terms whole and authors unstemmed") {
  Document d;
  d.id = "x";
  d.mesh_terms = {"Drug Interactions", " Humans "};
  d.authors = {"Wang Z", "Hollings J"};
  d.journal = "Clinical Pharmacology";
  const auto t = tokenize(d);
  CHECK(t.mesh_tokens == std::vector<std::string>{"MeSH:Drug Interactions", "MeSH:Humans"});
  CHECK(field_tokens(t, Field::Author) == std::vector<std::string>{"AU:wang", "AU:hollings"});
  CHECK(field_tokens(t, Field::Journal) == std::vector<std::string>{"clinic", "pharmacologi"});
}

TEST_CASE("no token contains a digit or is shorter than two characters") {
  const auto t = tokenize(doc_with_abstract("a 12 b3c x1y2 99% of AUC0-inf in 2013"));
  for (const auto& tok : t.all_tokens()) {
    CAPTURE(tok);
    CHECK(tok.find_first_of("0123456789") == std::string::npos);
    CHECK((tok.size() >= 2 || tok == "#"));
  }
}

TEST_CASE("accented letters fold and other non-ASCII characters separate") {
  CHECK(fold_to_ascii("caf\xc3\xa9") == "cafe");
  CHECK(split_tokens("na\xc3\xafve \xce\xb2-blocker") == std::vector<std::string>{"naive", "blocker"});
}

TEST_CASE("tokenize is deterministic and preserves the label") {
  Document d = doc_with_abstract("Plasma concentrations of warfarin increased.");
  d.label = Label::Relevant;
  const auto a = tokenize(d), b = tokenize(d);
  CHECK(a.all_tokens() == b.all_tokens());
  CHECK(a.label == Label::Relevant);
}

TEST_CASE("parse_corpus reads records in order and counts classes") {
  std::istringstream in(
      "{\"id\":\"1\",\"label\":\"relevant\",\"title\":\"A\"}\n"
      "\n"
      "{\"id\":\"2\",\"label\":0,\"title\":\"B\",\"abstract_text\":\"text\",\"mesh_terms\":[\"Humans\"]}\n"
      "{\"id\":\"3\",\"label\":true,\"title\":\"C\"}\n");
  const Corpus c = parse_corpus(in);
  REQUIRE(c.size() == 3);
  CHECK(c[0].id == "1");
  CHECK(c[0].label == Label::Relevant);
  CHECK(c[1].label == Label::Irrelevant);
  CHECK(c[1].mesh_terms == std::vector<std::string>{"Humans"});
  CHECK(c[2].label == Label::Relevant);
  CHECK(c[0].authors.empty());
}

TEST_CASE("empty corpus is not an error") {
  std::istringstream in("");
  CHECK(parse_corpus(in).empty());
}

TEST_CASE("malformed records name their line") {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_corpus(in);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string missing = error_of("{\"id\":\"1\",\"label\":1,\"title\":\"A\"}\n{\"id\":\"2\",\"title\":\"B\"}\n");
  CHECK(missing.find("line 2") != std::string::npos);
  CHECK(missing.find("label") != std::string::npos);
  const std::string dup = error_of("{\"id\":\"1\",\"label\":1,\"title\":\"A\"}\n{\"id\":\"1\",\"label\":0,\"title\":\"B\"}\n");
  CHECK(dup.find("duplicate") != std::string::npos);
  CHECK(error_of("{\"label\":1,\"title\":\"A\"}").find("id") != std::string::npos);
  CHECK(error_of("{\"id\":\"1\",\"label\":1}").find("title") != std::string::npos);
  CHECK(error_of("not json").find("line 1") != std::string::npos);
  CHECK(error_of("{\"id\":\"1\",\"label\":\"maybe\",\"title\":\"A\"}").find("line 1") != std::string::npos);
}

TEST_CASE("documents and token records round-trip through JSON") {
  Document d;
  d.id = "r1";
  d.label = Label::Relevant;
  d.title = "Title";
  d.abstract_text = "Some text";
  d.authors = {"A B"};
  d.mesh_terms = {"Drug Interactions"};
  d.rn_codes = {"0 (Cytochrome P-450 CYP3A)"};
  const Document back = document_from_json_line(document_to_json_line(d), 1);
  CHECK(back.id == d.id);
  CHECK(back.label == d.label);
  CHECK(back.abstract_text == d.abstract_text);
  CHECK(back.rn_codes == d.rn_codes);

  const TokenizedDocument t = tokenize(d);
  const TokenizedDocument t2 = tokenized_from_json_line(tokenized_to_json_line(t), 1);
  CHECK(t2.all_tokens() == t.all_tokens());
  CHECK(t2.fields.size() == t.fields.size());
}
