#pragma once

#include <span>
#include <vector>

#include "capfair/corpus.hpp"
#include "capfair/lexicon.hpp"
#include "capfair/splits.hpp"

namespace capfair {

struct EvalPair {
  std::int64_t image_id = 0;
  std::vector<std::string> candidate;                  // may be empty
  std::vector<std::vector<std::string>> references;    // >= 1
};

// Corpus-level BLEU with uniform 1/max_n weights, clipped counts, closest
// reference length brevity penalty and no smoothing: any zero precision
// zeroes the score.
double bleu(std::span<const EvalPair> pairs, int max_n);

// LCS-based F with beta = 1.2, max over references, mean over pairs.
double rouge_l(std::span<const EvalPair> pairs);

// Original CIDEr: tf-idf n-gram cosines for n=1..4 averaged over references
// and orders, scaled by 10.
double cider(std::span<const EvalPair> pairs);

// Two-stage unigram alignment (exact, then Porter stems) with fragmentation
// penalty; alpha 0.9, beta 3, gamma 0.5.
double meteor_lite(std::span<const EvalPair> pairs);

struct PerImageScores {
  std::int64_t image_id = 0;
  double bleu4 = 0;
  double rouge_l = 0;
  double meteor_lite = 0;
  double cider = 0;  // corpus-level idf, 10x scale
};

struct MetricReport {
  double bleu1 = 0, bleu2 = 0, bleu3 = 0, bleu4 = 0;
  double rouge_l = 0;
  double meteor_lite = 0;
  double cider = 0;
  std::size_t n_images = 0;
  std::vector<PerImageScores> per_image;  // filled when requested
};

MetricReport evaluate(std::span<const EvalPair> pairs, bool with_per_image = false,
                      int workers = 0);

// Pairs each candidate with the reference captions of its image. With
// neutral_mode both sides are neutralized first (the -N protocol).
std::vector<EvalPair> build_eval_pairs(const CandidateCaptionFile& candidates,
                                       const Corpus& corpus, bool neutral_mode,
                                       const Lexicon& lexicon);

struct GenderAccuracyReport {
  double accuracy = 0;   // over confident images that have a prediction
  double coverage = 0;   // confident images with any prediction
  std::size_t n_confident = 0;
  std::size_t n_scored = 0;
  std::size_t n_correct = 0;
};

// Scores a prediction file against the confident split's consensus genders.
// Unknown predictions count as incorrect.
GenderAccuracyReport gender_accuracy(const GenderPredictionFile& predictions,
                                     const SplitAssignment& splits);

void write_per_image_csv(const std::vector<PerImageScores>& rows,
                         const std::filesystem::path& path);

}  // namespace capfair
