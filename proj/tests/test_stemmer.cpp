#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "capfair/stemmer.hpp"

using capfair::porter_stem;

// Full-pipeline outputs for the worked examples published with the Porter
// (1980) algorithm, plus a few caption-flavoured words.
static const std::vector<std::pair<const char*, const char*>> kPorterFixture = {
    {"caresses", "caress"},   {"ponies", "poni"},        {"ties", "ti"},
    {"caress", "caress"},     {"cats", "cat"},           {"feed", "feed"},
    {"agreed", "agre"},       {"plastered", "plaster"},  {"bled", "bled"},
    {"motoring", "motor"},    {"sing", "sing"},          {"conflated", "conflat"},
    {"troubled", "troubl"},   {"sized", "size"},         {"hopping", "hop"},
    {"tanned", "tan"},        {"falling", "fall"},       {"hissing", "hiss"},
    {"fizzed", "fizz"},       {"failing", "fail"},       {"filing", "file"},
    {"happy", "happi"},       {"sky", "sky"},            {"relational", "relat"},
    {"conditional", "condit"}, {"rational", "ration"},   {"valenci", "valenc"},
    {"hesitanci", "hesit"},   {"digitizer", "digit"},    {"conformabli", "conform"},
    {"radicalli", "radic"},   {"differentli", "differ"}, {"vileli", "vile"},
    {"analogousli", "analog"}, {"vietnamization", "vietnam"},
    {"predication", "predic"}, {"operator", "oper"},     {"feudalism", "feudal"},
    {"decisiveness", "decis"}, {"hopefulness", "hope"},  {"callousness", "callous"},
    {"formaliti", "formal"},  {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"},
    {"triplicate", "triplic"}, {"formative", "form"},    {"formalize", "formal"},
    {"electriciti", "electr"}, {"electrical", "electr"}, {"hopeful", "hope"},
    {"goodness", "good"},     {"revival", "reviv"},      {"allowance", "allow"},
    {"inference", "infer"},   {"airliner", "airlin"},    {"gyroscopic", "gyroscop"},
    {"adjustable", "adjust"}, {"defensible", "defens"},  {"irritant", "irrit"},
    {"replacement", "replac"}, {"adjustment", "adjust"}, {"dependent", "depend"},
    {"adoption", "adopt"},    {"homologou", "homolog"},  {"communism", "commun"},
    {"activate", "activ"},    {"angulariti", "angular"}, {"homologous", "homolog"},
    {"effective", "effect"},  {"bowdlerize", "bowdler"}, {"probate", "probat"},
    {"rate", "rate"},         {"cease", "ceas"},         {"controll", "control"},
    {"roll", "roll"},         {"generalizations", "gener"},
    {"oscillators", "oscil"}, {"running", "run"},        {"runs", "run"},
    {"skiing", "ski"},        {"walking", "walk"},       {"playing", "plai"},
    {"plays", "plai"},        {"carrying", "carri"},     {"carries", "carri"},
};

TEST_CASE("porter stemmer matches the published worked examples") {
  for (const auto& [word, stem] : kPorterFixture) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("porter stemmer leaves very short words alone") {
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("is") == "is");
  CHECK(porter_stem("") == "");
}

TEST_CASE("words sharing an inflection stem identically") {
  CHECK(porter_stem("running") == porter_stem("runs"));
  CHECK(porter_stem("playing") == porter_stem("plays"));
  CHECK(porter_stem("carrying") == porter_stem("carries"));
}
