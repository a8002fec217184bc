#include "capfair/stemmer.hpp"

#include <array>
#include <utility>

namespace capfair {

namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return false;
    case 'y':
      return i == 0 || !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m in the [C](VC)^m[V] decomposition.
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < len; ++i) {
    const bool vowel = !is_consonant(w, i);
    if (!vowel && prev_vowel) ++m;
    prev_vowel = vowel;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(const std::string& w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final consonant is not w, x or y.
bool ends_cvc(const std::string& w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
         last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

// Replaces suffix when the remaining stem has measure > threshold.
bool replace_if_measure(std::string& w, std::string_view suffix, std::string_view rep,
                        int threshold) {
  if (!ends_with(w, suffix)) return false;
  const std::size_t stem_len = w.size() - suffix.size();
  if (measure(w, stem_len) > threshold) {
    w.resize(stem_len);
    w.append(rep);
  }
  return true;  // suffix matched, stop scanning the rule list
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) w.resize(w.size() - 2);
  else if (ends_with(w, "ies")) w.resize(w.size() - 2);
  else if (ends_with(w, "ss")) {}
  else if (ends_with(w, "s")) w.resize(w.size() - 1);
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
    w.resize(w.size() - 2);
    stripped = true;
  } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
    w.resize(w.size() - 3);
    stripped = true;
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w) && !ends_with(w, "l") && !ends_with(w, "s") &&
             !ends_with(w, "z")) {
    w.resize(w.size() - 1);
  } else if (measure(w, w.size()) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
}

// Longest suffix first within each rule table.
constexpr std::array<std::pair<std::string_view, std::string_view>, 20> kStep2 = {{
    {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"tional", "tion"}, {"biliti", "ble"},  {"enci", "ence"},
    {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
    {"entli", "ent"},   {"ousli", "ous"},   {"ation", "ate"},   {"ator", "ate"},
    {"alism", "al"},    {"aliti", "al"},    {"iviti", "ive"},   {"eli", "e"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kStep3 = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ness", ""},  {"ful", ""},
}};

constexpr std::array<std::string_view, 19> kStep4 = {
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion", "ism",
    "ate",   "iti",  "ous",  "ive",  "ize",  "al",   "er",  "ic",  "ou",
};

void step2(std::string& w) {
  for (const auto& [suffix, rep] : kStep2)
    if (replace_if_measure(w, suffix, rep, 0)) return;
}

void step3(std::string& w) {
  for (const auto& [suffix, rep] : kStep3)
    if (replace_if_measure(w, suffix, rep, 0)) return;
}

void step4(std::string& w) {
  for (const std::string_view suffix : kStep4) {
    if (!ends_with(w, suffix)) continue;
    const std::size_t stem_len = w.size() - suffix.size();
    if (measure(w, stem_len) > 1) {
      if (suffix == "ion" && !(stem_len > 0 && (w[stem_len - 1] == 's' ||
                                                w[stem_len - 1] == 't')))
        return;
      w.resize(stem_len);
    }
    return;
  }
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  const int m = measure(w, w.size() - 1);
  std::string stem = w.substr(0, w.size() - 1);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.resize(w.size() - 1);
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w) && ends_with(w, "l"))
    w.resize(w.size() - 1);
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w(word);
  if (w.size() <= 2) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace capfair
