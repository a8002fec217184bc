#pragma once

#include <map>
#include <set>
#include <vector>

#include "capfair/corpus.hpp"
#include "capfair/lexicon.hpp"

namespace capfair {

// Gender-agnostic form of a caption. No token classifies as male or female
// under the lexicon that produced it.
struct NeutralCaption {
  std::vector<Token> tokens;
  std::set<std::size_t> replaced_positions;
  std::map<std::size_t, GenderClass> original_classes;
};

// Replaces every gendered token with the neutral target of matching number;
// everything else is untouched.
NeutralCaption neutralize(const Lexicon& lexicon, std::string_view caption);

// Substitutes the neutral target words (all occurrences, native ones
// included) with the gendered target of the same number. Unknown renders the
// caption unchanged.
std::string recombine(const Lexicon& lexicon, const NeutralCaption& neutral,
                      GenderLabel gender);

struct ReplacementRecord {
  std::int64_t image_id = 0;
  std::size_t caption_index = 0;
  std::size_t position = 0;
  std::string original;
  std::string replacement;
};

Corpus neutralize_corpus(const Lexicon& lexicon, const Corpus& corpus,
                         int workers = 0,
                         std::vector<ReplacementRecord>* audit = nullptr);

CandidateCaptionFile neutralize_candidates(const Lexicon& lexicon,
                                           const CandidateCaptionFile& candidates,
                                           std::vector<ReplacementRecord>* audit = nullptr);

// Neutralize-then-recombine over a candidate file; images missing from the
// prediction file keep the neutral form.
CandidateCaptionFile sai_pipeline(const Lexicon& lexicon,
                                  const CandidateCaptionFile& candidates,
                                  const GenderPredictionFile& predictions);

void write_audit_csv(const std::vector<ReplacementRecord>& audit,
                     const std::filesystem::path& path);

}  // namespace capfair
