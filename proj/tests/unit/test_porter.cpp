#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "lintext/corpus.hpp"
#include "lintext/porter.hpp"

using lintext::porter_stem;

namespace {

// Pairs from the published test vocabulary and the rule examples of the
// original algorithm description.
const std::vector<std::pair<std::string, std::string>> kPairs = {
    {"caresses", "caress"},   {"ponies", "poni"},         {"ties", "ti"},
    {"caress", "caress"},     {"cats", "cat"},            {"feed", "feed"},
    {"agreed", "agre"},       {"plastered", "plaster"},   {"bled", "bled"},
    {"motoring", "motor"},    {"sing", "sing"},           {"conflated", "conflat"},
    {"troubled", "troubl"},   {"sized", "size"},          {"hopping", "hop"},
    {"tanned", "tan"},        {"falling", "fall"},        {"hissing", "hiss"},
    {"fizzed", "fizz"},       {"failing", "fail"},        {"filing", "file"},
    {"happy", "happi"},       {"sky", "sky"},             {"relational", "relat"},
    {"conditional", "condit"}, {"rational", "ration"},    {"valenci", "valenc"},
    {"hesitanci", "hesit"},   {"digitizer", "digit"},     {"conformabli", "conform"},
    {"radicalli", "radic"},   {"differentli", "differ"},  {"vileli", "vile"},
    {"analogousli", "analog"}, {"vietnamization", "vietnam"}, {"predication", "predic"},
    {"operator", "oper"},     {"feudalism", "feudal"},    {"decisiveness", "decis"},
    {"hopefulness", "hope"},  {"callousness", "callous"}, {"formaliti", "formal"},
    {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
    {"formative", "form"},    {"formalize", "formal"},    {"electriciti", "electr"},
    {"electrical", "electr"}, {"hopeful", "hope"},        {"goodness", "good"},
    {"revival", "reviv"},     {"allowance", "allow"},     {"inference", "infer"},
    {"airliner", "airlin"},   {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
    {"defensible", "defens"}, {"irritant", "irrit"},      {"replacement", "replac"},
    {"adjustment", "adjust"}, {"dependent", "depend"},    {"adoption", "adopt"},
    {"homologou", "homolog"}, {"communism", "commun"},    {"activate", "activ"},
    {"angulariti", "angular"}, {"homologous", "homolog"}, {"effective", "effect"},
    {"bowdlerize", "bowdler"}, {"probate", "probat"},     {"rate", "rate"},
    {"cease", "ceas"},        {"controll", "control"},    {"roll", "roll"},
    {"generalizations", "gener"}, {"oscillators", "oscil"}, {"daily", "daili"},
    {"random", "random"},     {"crossover", "crossov"},   {"studies", "studi"},
    {"interaction", "interact"}, {"pharmacokinetics", "pharmacokinet"},
    {"a", "a"},               {"is", "is"},
};

}  // namespace

TEST_CASE("porter stems match the reference pairs") {
  for (const auto& [word, stem] : kPairs) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("porter keeps words of two letters or fewer") {
  CHECK(porter_stem("as") == "as");
  CHECK(porter_stem("x") == "x");
  CHECK(porter_stem("") == "");
}

TEST_CASE("tokenize stems each lowercased word") {
  lintext::Document d;
  d.id = "p1";
  d.title = "Effects of Ketoconazole on the Pharmacokinetics of Midazolam in healthy volunteers";
  const auto tok = lintext::tokenize(d);
  const std::vector<std::string> words = {"effects", "of", "ketoconazole", "on", "the", "pharmacokinetics",
                                          "of", "midazolam", "in", "healthy", "volunteers"};
  std::vector<std::string> expected;
  for (const auto& w : words) expected.push_back(porter_stem(w));
  REQUIRE(tok.fields.size() >= 1);
  CHECK(tok.fields[0].tokens == expected);
}
