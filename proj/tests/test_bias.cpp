#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "capfair/bias.hpp"
#include "capfair/errors.hpp"
#include "capfair/transform.hpp"
#include "generators.hpp"

using namespace capfair;

namespace {

const BiasRow* find_row(const std::vector<BiasRow>& rows, const std::string& word) {
  for (const BiasRow& row : rows)
    if (row.word == word) return &row;
  return nullptr;
}

Corpus shopping_corpus() {
  return Corpus({{1, "1.jpg", {"a woman shopping at a market", "a lady shopping"}},
                 {2, "2.jpg", {"a woman shopping for fruit"}},
                 {3, "3.jpg", {"a man repairing a car"}},
                 {4, "4.jpg", {"a man repairing a fence", "a guy repairing it"}}},
                "shopping");
}

}  // namespace

TEST_CASE("female-only co-occurrence yields ratio 0") {
  const auto rows = cooccurrence_table(Lexicon::defaults(), shopping_corpus(), 1);
  const BiasRow* shopping = find_row(rows, "shopping");
  REQUIRE(shopping != nullptr);
  CHECK(shopping->male_count == 0);
  CHECK(shopping->female_count == 2);  // image granularity, not caption
  CHECK(shopping->ratio == 0.0);
  CHECK(shopping->support == 2);
  const BiasRow* repairing = find_row(rows, "repairing");
  REQUIRE(repairing != nullptr);
  CHECK(repairing->ratio == 1.0);
}

TEST_CASE("balanced word sits at ratio one half") {
  std::vector<ImageRecord> images;
  for (std::int64_t id = 1; id <= 3; ++id)
    images.push_back({id, "m.jpg", {"a man surfing the wave"}});
  for (std::int64_t id = 4; id <= 6; ++id)
    images.push_back({id, "f.jpg", {"a woman surfing the wave"}});
  const auto rows =
      cooccurrence_table(Lexicon::defaults(), Corpus(std::move(images), "bal"), 1);
  const BiasRow* surfing = find_row(rows, "surfing");
  REQUIRE(surfing != nullptr);
  CHECK(surfing->ratio == 0.5);
  CHECK(surfing->support == 6);
}

TEST_CASE("a corpus without gendered captions yields an empty table") {
  const Corpus corpus({{1, "1.jpg", {"a bowl of fruit", "a person walking"}}}, "n");
  CHECK(cooccurrence_table(Lexicon::defaults(), corpus, 1).empty());
}

TEST_CASE("lexicon words never appear as rows") {
  const auto rows = cooccurrence_table(Lexicon::defaults(), shopping_corpus(), 1);
  CHECK(find_row(rows, "woman") == nullptr);
  CHECK(find_row(rows, "man") == nullptr);
  CHECK(find_row(rows, "lady") == nullptr);
  CHECK(find_row(rows, "person") == nullptr);
}

TEST_CASE("duplicating a caption within an image changes no count") {
  const Lexicon lex = Lexicon::defaults();
  const Corpus base = shopping_corpus();
  std::vector<ImageRecord> doubled = base.images();
  for (ImageRecord& rec : doubled) rec.captions.push_back(rec.captions.front());
  const auto before = cooccurrence_table(lex, base, 1);
  const auto after = cooccurrence_table(lex, Corpus(std::move(doubled), "dup"), 1);
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].word == after[i].word);
    CHECK(before[i].male_count == after[i].male_count);
    CHECK(before[i].female_count == after[i].female_count);
  }
}

TEST_CASE("gender symmetry maps ratios to their complement") {
  const Lexicon lex = Lexicon::defaults();
  std::mt19937 rng(55);
  const Corpus corpus = testgen::random_corpus(rng, 80, 0.3, 0.05);

  auto swap_words = [](std::string text) {
    std::vector<Token> tokens = tokenize(text);
    std::string out;
    for (const Token& tok : tokens) {
      std::string w = tok.norm;
      if (w == "man") w = "woman";
      else if (w == "woman") w = "man";
      else if (w == "men") w = "women";
      else if (w == "women") w = "men";
      else if (w == "guy") w = "lady";
      else if (w == "lady") w = "guy";
      else if (w == "guys") w = "ladies";
      else if (w == "ladies") w = "guys";
      else if (w == "boy") w = "girl";
      else if (w == "girl") w = "boy";
      else if (w == "boys") w = "girls";
      else if (w == "girls") w = "boys";
      else if (w == "male") w = "female";
      else if (w == "female") w = "male";
      else if (w == "males") w = "females";
      else if (w == "females") w = "males";
      else if (w == "gentleman") w = "lady";   // no female counterpart pair
      else if (w == "gentlemen") w = "ladies";
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  };

  std::vector<ImageRecord> swapped = corpus.images();
  for (ImageRecord& rec : swapped)
    for (std::string& caption : rec.captions) caption = swap_words(caption);

  const auto before = cooccurrence_table(lex, corpus, 1);
  const auto after = cooccurrence_table(lex, Corpus(std::move(swapped), "swap"), 1);
  for (const BiasRow& row : before) {
    const BiasRow* mirrored = find_row(after, row.word);
    REQUIRE(mirrored != nullptr);
    CHECK(mirrored->ratio == doctest::Approx(1.0 - row.ratio).epsilon(1e-12));
    CHECK(mirrored->support == row.support);
  }
}

TEST_CASE("neutralized corpora have empty tables and empty comparisons") {
  const Lexicon lex = Lexicon::defaults();
  std::mt19937 rng(56);
  const Corpus corpus = testgen::random_corpus(rng, 40, 0.3, 0.1);
  const Corpus neutral = neutralize_corpus(lex, corpus);
  const auto before = cooccurrence_table(lex, corpus, 1);
  const auto after = cooccurrence_table(lex, neutral, 1);
  CHECK(!before.empty());
  CHECK(after.empty());
  CHECK(compare_bias(before, after).empty());
}

TEST_CASE("compare_bias joins on word") {
  const auto rows = cooccurrence_table(Lexicon::defaults(), shopping_corpus(), 1);
  const auto self = compare_bias(rows, rows);
  REQUIRE(self.size() == rows.size());
  for (const BiasShift& shift : self) CHECK(shift.ratio_before == shift.ratio_after);

  std::vector<BiasRow> disjoint = {{"zzz", 1, 0, 1.0, 1}};
  CHECK(compare_bias(rows, disjoint).empty());
}

TEST_CASE("min_support filters monotonically") {
  const Lexicon lex = Lexicon::defaults();
  std::mt19937 rng(57);
  const Corpus corpus = testgen::random_corpus(rng, 120, 0.3, 0.05);
  const auto strict = cooccurrence_table(lex, corpus, 10);
  const auto loose = cooccurrence_table(lex, corpus, 5);
  std::set<std::string> loose_words;
  for (const BiasRow& row : loose) loose_words.insert(row.word);
  for (const BiasRow& row : strict) {
    CHECK(loose_words.contains(row.word));
    CHECK(row.support >= 10);
  }
  CHECK(strict.size() <= loose.size());
  CHECK_THROWS_AS(cooccurrence_table(lex, corpus, 0), ValidationError);
}

TEST_CASE("rows are sorted by skew, support, then word") {
  const Lexicon lex = Lexicon::defaults();
  std::mt19937 rng(58);
  const Corpus corpus = testgen::random_corpus(rng, 100, 0.3, 0.05);
  const auto rows = cooccurrence_table(lex, corpus, 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double da = std::fabs(rows[i - 1].ratio - 0.5);
    const double db = std::fabs(rows[i].ratio - 0.5);
    const bool ordered =
        da > db ||
        (da == db && (rows[i - 1].support > rows[i].support ||
                      (rows[i - 1].support == rows[i].support &&
                       rows[i - 1].word < rows[i].word)));
    CHECK(ordered);
  }
}
