#pragma once

#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "capfair/corpus.hpp"
#include "capfair/lexicon.hpp"

namespace capfair {

enum class ConsensusVerdict { ConfidentMale, ConfidentFemale, HumanMixed, NoHuman };

std::string_view to_string(ConsensusVerdict v);

struct CaptionGenderCounts {
  int male = 0;
  int female = 0;
  int neutral_human = 0;
};

struct ImageConsensus {
  std::int64_t image_id = 0;
  std::vector<CaptionGenderCounts> per_caption;
  ConsensusVerdict verdict = ConsensusVerdict::NoHuman;
};

// ConfidentMale iff every caption has >=1 male token and no female token
// (symmetrically female); NoHuman iff no caption mentions any human word.
ImageConsensus consensus(const Lexicon& lexicon, const ImageRecord& image);

struct SplitAssignment {
  std::map<std::int64_t, GenderLabel> confident;  // Male/Female only
  std::set<std::int64_t> human;
  std::set<std::int64_t> nature;  // complement of human
};

SplitAssignment build_splits(const Lexicon& lexicon, const Corpus& corpus,
                             int workers = 0);

// which: "confident" | "human" | "nature". Writes the member sub-corpus in
// the annotation file format.
void export_split(const SplitAssignment& assignment, std::string_view which,
                  const Corpus& corpus, const std::filesystem::path& path);

// Sub-corpus with exactly the given members, canonical order preserved.
Corpus filter_corpus(const Corpus& corpus, const std::set<std::int64_t>& members,
                     std::string label);

}  // namespace capfair
