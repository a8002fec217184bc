#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace capfair {

// Per-image gender signal, either predicted by an external model or derived
// from caption consensus.
enum class GenderLabel { Male, Female, Unknown };

std::string_view to_string(GenderLabel label);

enum class GenderClass {
  MaleSingular,
  MalePlural,
  FemaleSingular,
  FemalePlural,
  NeutralHumanSingular,
  NeutralHumanPlural,
  NonHuman,
};

std::string_view to_string(GenderClass c);

constexpr bool is_male(GenderClass c) {
  return c == GenderClass::MaleSingular || c == GenderClass::MalePlural;
}
constexpr bool is_female(GenderClass c) {
  return c == GenderClass::FemaleSingular || c == GenderClass::FemalePlural;
}
constexpr bool is_gendered(GenderClass c) { return is_male(c) || is_female(c); }
constexpr bool is_neutral_human(GenderClass c) {
  return c == GenderClass::NeutralHumanSingular || c == GenderClass::NeutralHumanPlural;
}
constexpr bool is_human(GenderClass c) { return is_gendered(c) || is_neutral_human(c); }
constexpr bool is_plural(GenderClass c) {
  return c == GenderClass::MalePlural || c == GenderClass::FemalePlural ||
         c == GenderClass::NeutralHumanPlural;
}

struct Token {
  std::string surface;     // original slice, outer punctuation stripped, case kept
  std::string norm;        // lowercased surface
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Splits on whitespace, strips leading/trailing punctuation from each piece
// (apostrophes inside words survive), drops empty pieces, lowercases norms.
std::vector<Token> tokenize(std::string_view text);

// Joins token surfaces with single spaces.
std::string render(const std::vector<Token>& tokens);

std::vector<std::string> norms_of(const std::vector<Token>& tokens);

// The gender/neutral word inventory. Immutable after construction; every
// constructor path validates the set-disjointness and target invariants.
class Lexicon {
 public:
  static Lexicon defaults();

  // Reads the sectioned config format and extends the defaults with it.
  // An empty file yields the default inventory.
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::string_view text, const std::string& origin);

  GenderClass classify(std::string_view norm) const;
  GenderClass classify(const Token& token) const { return classify(token.norm); }

  // The word set behind a class; NonHuman has no set.
  const std::unordered_set<std::string>& words(GenderClass c) const;
  const std::map<std::string, std::string>& plural_of() const { return plural_of_; }

  const std::string& neutral_target(bool plural) const {
    return plural ? neutral_target_plural_ : neutral_target_singular_;
  }
  // label must be Male or Female.
  const std::string& gendered_target(GenderLabel label, bool plural) const;

 private:
  Lexicon() = default;
  void validate() const;
  friend class LexiconBuilder;

  std::array<std::unordered_set<std::string>, 6> sets_;  // indexed by GenderClass
  std::map<std::string, std::string> plural_of_;
  std::string neutral_target_singular_;
  std::string neutral_target_plural_;
  std::array<std::string, 4> gendered_targets_;  // male sg, male pl, female sg, female pl
};

}  // namespace capfair
