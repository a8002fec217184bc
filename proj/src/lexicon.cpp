#include "capfair/lexicon.hpp"

#include <fmt/format.h>

#include <cctype>
#include <fstream>
#include <sstream>

#include "capfair/errors.hpp"

namespace capfair {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

constexpr int kNumSets = 6;

constexpr std::array<std::string_view, kNumSets> kSetNames = {
    "male_singular", "male_plural",   "female_singular",
    "female_plural", "neutral_singular", "neutral_plural",
};

int set_index_of(std::string_view name) {
  for (int i = 0; i < kNumSets; ++i)
    if (kSetNames[i] == name) return i;
  return -1;
}

}  // namespace

std::string_view to_string(GenderLabel label) {
  switch (label) {
    case GenderLabel::Male: return "male";
    case GenderLabel::Female: return "female";
    case GenderLabel::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(GenderClass c) {
  switch (c) {
    case GenderClass::MaleSingular: return "male_singular";
    case GenderClass::MalePlural: return "male_plural";
    case GenderClass::FemaleSingular: return "female_singular";
    case GenderClass::FemalePlural: return "female_plural";
    case GenderClass::NeutralHumanSingular: return "neutral_singular";
    case GenderClass::NeutralHumanPlural: return "neutral_plural";
    case GenderClass::NonHuman: return "non_human";
  }
  return "non_human";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < n && !is_space(text[i])) ++i;
    std::string_view piece = text.substr(begin, i - begin);
    while (!piece.empty() && is_punct(piece.front())) piece.remove_prefix(1);
    while (!piece.empty() && is_punct(piece.back())) piece.remove_suffix(1);
    if (piece.empty()) continue;
    Token tok;
    tok.surface = std::string(piece);
    tok.norm = lowercase(piece);
    tok.position = tokens.size();
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string render(const std::vector<Token>& tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

std::vector<std::string> norms_of(const std::vector<Token>& tokens) {
  std::vector<std::string> norms;
  norms.reserve(tokens.size());
  for (const Token& t : tokens) norms.push_back(t.norm);
  return norms;
}

GenderClass Lexicon::classify(std::string_view norm) const {
  const std::string key(norm);
  for (int i = 0; i < kNumSets; ++i)
    if (sets_[static_cast<std::size_t>(i)].contains(key))
      return static_cast<GenderClass>(i);
  return GenderClass::NonHuman;
}

const std::unordered_set<std::string>& Lexicon::words(GenderClass c) const {
  if (c == GenderClass::NonHuman)
    throw ValidationError("lexicon: NonHuman has no word set");
  return sets_[static_cast<std::size_t>(c)];
}

const std::string& Lexicon::gendered_target(GenderLabel label, bool plural) const {
  if (label == GenderLabel::Unknown)
    throw ValidationError("lexicon: no gendered target for unknown gender");
  const std::size_t base = label == GenderLabel::Male ? 0 : 2;
  return gendered_targets_[base + (plural ? 1 : 0)];
}

void Lexicon::validate() const {
  // pairwise disjoint sets
  for (int a = 0; a < kNumSets; ++a) {
    for (int b = a + 1; b < kNumSets; ++b) {
      for (const std::string& w : sets_[static_cast<std::size_t>(a)]) {
        if (sets_[static_cast<std::size_t>(b)].contains(w))
          throw ValidationError(fmt::format(
              "lexicon: word '{}' appears in both [{}] and [{}]", w, kSetNames[a],
              kSetNames[b]));
      }
    }
  }
  // every word must be its own token norm
  for (int a = 0; a < kNumSets; ++a) {
    for (const std::string& w : sets_[static_cast<std::size_t>(a)]) {
      const auto toks = tokenize(w);
      if (toks.size() != 1 || toks[0].norm != w)
        throw ValidationError(
            fmt::format("lexicon: '{}' in [{}] is not a single normalized word", w,
                        kSetNames[a]));
    }
  }
  // plural_of maps singular-set members to plural-set members of the same
  // gender triple
  for (const auto& [sg, pl] : plural_of_) {
    const GenderClass csg = classify(sg);
    const GenderClass cpl = classify(pl);
    const bool ok =
        (csg == GenderClass::MaleSingular && cpl == GenderClass::MalePlural) ||
        (csg == GenderClass::FemaleSingular && cpl == GenderClass::FemalePlural) ||
        (csg == GenderClass::NeutralHumanSingular &&
         cpl == GenderClass::NeutralHumanPlural);
    if (!ok)
      throw ValidationError(fmt::format(
          "lexicon: plural_of '{}' -> '{}' does not map a singular word to the "
          "plural set of the same gender ({} -> {})",
          sg, pl, to_string(csg), to_string(cpl)));
  }
  if (classify(neutral_target_singular_) != GenderClass::NeutralHumanSingular)
    throw ValidationError(fmt::format(
        "lexicon: neutral singular target '{}' is not in [neutral_singular]",
        neutral_target_singular_));
  if (classify(neutral_target_plural_) != GenderClass::NeutralHumanPlural)
    throw ValidationError(fmt::format(
        "lexicon: neutral plural target '{}' is not in [neutral_plural]",
        neutral_target_plural_));
  const std::array<GenderClass, 4> expected = {
      GenderClass::MaleSingular, GenderClass::MalePlural,
      GenderClass::FemaleSingular, GenderClass::FemalePlural};
  for (std::size_t i = 0; i < 4; ++i) {
    if (classify(gendered_targets_[i]) != expected[i])
      throw ValidationError(
          fmt::format("lexicon: gendered target '{}' is not in [{}]",
                      gendered_targets_[i], to_string(expected[i])));
  }
}

Lexicon Lexicon::defaults() {
  Lexicon lex;
  lex.sets_[0] = {"man", "guy", "boy", "gentleman", "male"};
  lex.sets_[1] = {"men", "guys", "boys", "gentlemen", "males"};
  lex.sets_[2] = {"woman", "lady", "girl", "female"};
  lex.sets_[3] = {"women", "ladies", "girls", "females"};
  lex.sets_[4] = {"person", "player", "skier",  "snowboarder", "surfer",
                  "rider",  "child",  "kid",    "human"};
  lex.sets_[5] = {"people", "players", "skiers",  "snowboarders", "surfers",
                  "riders", "children", "kids",   "humans"};
  lex.plural_of_ = {
      {"man", "men"},         {"guy", "guys"},
      {"boy", "boys"},        {"gentleman", "gentlemen"},
      {"male", "males"},      {"woman", "women"},
      {"lady", "ladies"},     {"girl", "girls"},
      {"female", "females"},  {"person", "people"},
      {"player", "players"},  {"skier", "skiers"},
      {"snowboarder", "snowboarders"}, {"surfer", "surfers"},
      {"rider", "riders"},    {"child", "children"},
      {"kid", "kids"},        {"human", "humans"},
  };
  lex.neutral_target_singular_ = "person";
  lex.neutral_target_plural_ = "people";
  lex.gendered_targets_ = {"man", "men", "woman", "women"};
  lex.validate();
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError(fmt::format("lexicon: cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

Lexicon Lexicon::parse(std::string_view text, const std::string& origin) {
  Lexicon lex = defaults();

  enum class Section { None, WordSet, PluralOf, Targets };
  Section section = Section::None;
  int set_index = -1;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim_view(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(fmt::format("{}:{}: unterminated section header", origin, line_no));
      const std::string_view name = trim_view(line.substr(1, line.size() - 2));
      if (name == "plural_of") {
        section = Section::PluralOf;
      } else if (name == "targets") {
        section = Section::Targets;
      } else if (int idx = set_index_of(name); idx >= 0) {
        section = Section::WordSet;
        set_index = idx;
      } else {
        throw ParseError(
            fmt::format("{}:{}: unknown section '[{}]'", origin, line_no, name));
      }
      continue;
    }
    if (section == Section::None)
      throw ParseError(
          fmt::format("{}:{}: entry before any section header", origin, line_no));

    if (section == Section::WordSet) {
      std::istringstream words{std::string(line)};
      std::string w;
      while (words >> w)
        lex.sets_[static_cast<std::size_t>(set_index)].insert(lowercase(w));
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(
          fmt::format("{}:{}: expected 'key = value' in this section", origin, line_no));
    const std::string key = lowercase(trim_view(line.substr(0, eq)));
    const std::string value = lowercase(trim_view(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ParseError(fmt::format("{}:{}: empty key or value", origin, line_no));

    if (section == Section::PluralOf) {
      lex.plural_of_[key] = value;
    } else {  // Targets
      if (key == "neutral_singular") {
        lex.neutral_target_singular_ = value;
      } else if (key == "neutral_plural") {
        lex.neutral_target_plural_ = value;
      } else if (key == "male_singular") {
        lex.gendered_targets_[0] = value;
      } else if (key == "male_plural") {
        lex.gendered_targets_[1] = value;
      } else if (key == "female_singular") {
        lex.gendered_targets_[2] = value;
      } else if (key == "female_plural") {
        lex.gendered_targets_[3] = value;
      } else {
        throw ParseError(
            fmt::format("{}:{}: unknown target '{}'", origin, line_no, key));
      }
    }
  }

  lex.validate();
  return lex;
}

}  // namespace capfair
