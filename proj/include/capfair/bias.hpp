#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "capfair/corpus.hpp"
#include "capfair/lexicon.hpp"

namespace capfair {

struct BiasRow {
  std::string word;
  std::int64_t male_count = 0;    // images co-mentioning word with a male token
  std::int64_t female_count = 0;
  double ratio = 0;               // male / (male + female)
  std::int64_t support = 0;       // male + female
};

// Image-granularity co-occurrence counts for every non-lexicon word, rows
// below min_support dropped, sorted by |ratio - 0.5| desc, support desc,
// word asc.
std::vector<BiasRow> cooccurrence_table(const Lexicon& lexicon, const Corpus& corpus,
                                        std::int64_t min_support, int workers = 0);

struct BiasShift {
  std::string word;
  double ratio_before = 0;
  double ratio_after = 0;
};

// Inner join on word; order follows `before`.
std::vector<BiasShift> compare_bias(const std::vector<BiasRow>& before,
                                    const std::vector<BiasRow>& after);

void write_bias_csv(const std::vector<BiasRow>& rows, const std::filesystem::path& path);

}  // namespace capfair
