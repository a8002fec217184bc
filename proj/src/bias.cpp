#include "capfair/bias.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "capfair/errors.hpp"
#include "capfair/parallel.hpp"

namespace capfair {

namespace {

struct GenderedWordSets {
  std::unordered_set<std::string> with_male;
  std::unordered_set<std::string> with_female;
};

// Non-lexicon words co-mentioned with a gendered token, image granularity:
// a word counts once per image and gender however many captions repeat it.
GenderedWordSets image_word_sets(const Lexicon& lexicon, const ImageRecord& image) {
  GenderedWordSets sets;
  for (const std::string& caption : image.captions) {
    bool has_male = false;
    bool has_female = false;
    std::vector<std::string> plain;
    for (const Token& tok : tokenize(caption)) {
      const GenderClass c = lexicon.classify(tok);
      if (is_male(c)) has_male = true;
      else if (is_female(c)) has_female = true;
      else if (c == GenderClass::NonHuman) plain.push_back(tok.norm);
    }
    if (!has_male && !has_female) continue;
    for (const std::string& w : plain) {
      if (has_male) sets.with_male.insert(w);
      if (has_female) sets.with_female.insert(w);
    }
  }
  return sets;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<BiasRow> cooccurrence_table(const Lexicon& lexicon, const Corpus& corpus,
                                        std::int64_t min_support, int workers) {
  if (min_support < 1)
    throw ValidationError(
        fmt::format("cooccurrence_table: min_support {} must be >= 1", min_support));

  const std::vector<ImageRecord>& images = corpus.images();
  std::vector<GenderedWordSets> per_image(images.size());
  parallel_for(images.size(), workers, [&](std::size_t i) {
    per_image[i] = image_word_sets(lexicon, images[i]);
  });

  struct Counts {
    std::int64_t male = 0;
    std::int64_t female = 0;
  };
  std::unordered_map<std::string, Counts> counts;
  for (const GenderedWordSets& sets : per_image) {
    for (const std::string& w : sets.with_male) ++counts[w].male;
    for (const std::string& w : sets.with_female) ++counts[w].female;
  }

  std::vector<BiasRow> rows;
  rows.reserve(counts.size());
  for (const auto& [word, c] : counts) {
    const std::int64_t support = c.male + c.female;
    if (support < min_support) continue;
    BiasRow row;
    row.word = word;
    row.male_count = c.male;
    row.female_count = c.female;
    row.support = support;
    row.ratio = static_cast<double>(c.male) / static_cast<double>(support);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const BiasRow& a, const BiasRow& b) {
    const double da = std::fabs(a.ratio - 0.5);
    const double db = std::fabs(b.ratio - 0.5);
    if (da != db) return da > db;
    if (a.support != b.support) return a.support > b.support;
    return a.word < b.word;
  });
  return rows;
}

std::vector<BiasShift> compare_bias(const std::vector<BiasRow>& before,
                                    const std::vector<BiasRow>& after) {
  std::unordered_map<std::string, double> after_ratio;
  for (const BiasRow& row : after) after_ratio.emplace(row.word, row.ratio);
  std::vector<BiasShift> shifts;
  for (const BiasRow& row : before) {
    const auto it = after_ratio.find(row.word);
    if (it == after_ratio.end()) continue;
    shifts.push_back(BiasShift{row.word, row.ratio, it->second});
  }
  return shifts;
}

void write_bias_csv(const std::vector<BiasRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << "word,male_count,female_count,ratio,support\n";
  for (const BiasRow& row : rows)
    out << fmt::format("{},{},{},{:.6f},{}\n", csv_escape(row.word), row.male_count,
                       row.female_count, row.ratio, row.support);
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace capfair
