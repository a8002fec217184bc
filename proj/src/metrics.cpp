#include "capfair/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "capfair/errors.hpp"
#include "capfair/parallel.hpp"
#include "capfair/stemmer.hpp"
#include "capfair/transform.hpp"

namespace capfair {

namespace {

constexpr int kMaxOrder = 4;
constexpr double kRougeBeta = 1.2;
constexpr double kMeteorAlpha = 0.9;
constexpr double kMeteorBeta = 3.0;
constexpr double kMeteorGamma = 0.5;

using WordId = std::uint32_t;

// Pairs re-expressed over interned word ids, in canonical (ascending
// image_id) order. Interning follows canonical order too, so every value
// derived below is invariant under permutation of the input pairs.
struct InternedPair {
  std::int64_t image_id = 0;
  std::vector<WordId> candidate;
  std::vector<std::vector<WordId>> references;
};

struct InternedCorpus {
  std::vector<InternedPair> pairs;
  std::vector<std::string> vocabulary;  // id -> word
};

InternedCorpus intern_pairs(std::span<const EvalPair> pairs) {
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].image_id < pairs[b].image_id;
  });

  InternedCorpus corpus;
  std::unordered_map<std::string, WordId> ids;
  auto intern = [&](const std::string& w) {
    auto [it, inserted] = ids.emplace(w, static_cast<WordId>(corpus.vocabulary.size()));
    if (inserted) corpus.vocabulary.push_back(w);
    return it->second;
  };
  auto intern_seq = [&](const std::vector<std::string>& seq) {
    std::vector<WordId> out;
    out.reserve(seq.size());
    for (const std::string& w : seq) out.push_back(intern(w));
    return out;
  };

  corpus.pairs.reserve(pairs.size());
  for (const std::size_t idx : order) {
    const EvalPair& p = pairs[idx];
    if (p.references.empty())
      throw ValidationError(
          fmt::format("pair for image {} has no references", p.image_id));
    InternedPair ip;
    ip.image_id = p.image_id;
    ip.candidate = intern_seq(p.candidate);
    ip.references.reserve(p.references.size());
    for (const auto& r : p.references) ip.references.push_back(intern_seq(r));
    corpus.pairs.push_back(std::move(ip));
  }
  return corpus;
}

struct NGramKey {
  std::array<WordId, kMaxOrder> words{};
  std::uint8_t n = 0;
  friend bool operator==(const NGramKey&, const NGramKey&) = default;
};

struct NGramHash {
  std::size_t operator()(const NGramKey& k) const {
    std::uint64_t h = 1469598103934665603ull ^ k.n;
    for (int i = 0; i < k.n; ++i) {
      h ^= k.words[static_cast<std::size_t>(i)];
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

template <typename V>
using NGramMap = std::unordered_map<NGramKey, V, NGramHash>;

NGramMap<int> count_ngrams(const std::vector<WordId>& seq, int n) {
  NGramMap<int> counts;
  if (static_cast<int>(seq.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= seq.size(); ++i) {
    NGramKey key;
    key.n = static_cast<std::uint8_t>(n);
    for (int j = 0; j < n; ++j)
      key.words[static_cast<std::size_t>(j)] = seq[i + static_cast<std::size_t>(j)];
    ++counts[key];
  }
  return counts;
}

void require_pairs(std::span<const EvalPair> pairs, std::string_view metric) {
  if (pairs.empty())
    throw ValidationError(fmt::format("{}: empty pair list", metric));
}

// -------------------------------------------------------------------- BLEU

struct BleuPairStats {
  std::array<std::int64_t, kMaxOrder> matched{};
  std::array<std::int64_t, kMaxOrder> total{};
  std::int64_t candidate_len = 0;
  std::int64_t closest_ref_len = 0;
};

BleuPairStats bleu_pair_stats(const InternedPair& pair) {
  BleuPairStats stats;
  stats.candidate_len = static_cast<std::int64_t>(pair.candidate.size());

  std::int64_t best_len = 0;
  std::int64_t best_diff = -1;
  for (const auto& ref : pair.references) {
    const std::int64_t len = static_cast<std::int64_t>(ref.size());
    const std::int64_t diff = std::llabs(len - stats.candidate_len);
    // closest reference length; ties pick the shorter reference
    if (best_diff < 0 || diff < best_diff || (diff == best_diff && len < best_len)) {
      best_diff = diff;
      best_len = len;
    }
  }
  stats.closest_ref_len = best_len;

  for (int k = 1; k <= kMaxOrder; ++k) {
    const NGramMap<int> cand = count_ngrams(pair.candidate, k);
    NGramMap<int> max_ref;
    for (const auto& ref : pair.references)
      for (const auto& [key, count] : count_ngrams(ref, k)) {
        int& slot = max_ref[key];
        slot = std::max(slot, count);
      }
    auto& total = stats.total[static_cast<std::size_t>(k - 1)];
    auto& matched = stats.matched[static_cast<std::size_t>(k - 1)];
    for (const auto& [key, count] : cand) {
      total += count;
      if (auto it = max_ref.find(key); it != max_ref.end())
        matched += std::min(count, it->second);
    }
  }
  return stats;
}

double bleu_impl(const InternedCorpus& corpus, int max_n, int workers) {
  std::vector<BleuPairStats> stats(corpus.pairs.size());
  parallel_for(corpus.pairs.size(), workers,
               [&](std::size_t i) { stats[i] = bleu_pair_stats(corpus.pairs[i]); });

  std::array<std::int64_t, kMaxOrder> matched{};
  std::array<std::int64_t, kMaxOrder> total{};
  std::int64_t c = 0;
  std::int64_t r = 0;
  for (const BleuPairStats& s : stats) {
    for (int k = 0; k < kMaxOrder; ++k) {
      matched[static_cast<std::size_t>(k)] += s.matched[static_cast<std::size_t>(k)];
      total[static_cast<std::size_t>(k)] += s.total[static_cast<std::size_t>(k)];
    }
    c += s.candidate_len;
    r += s.closest_ref_len;
  }

  double log_sum = 0.0;
  for (int k = 1; k <= max_n; ++k) {
    const std::int64_t m = matched[static_cast<std::size_t>(k - 1)];
    const std::int64_t t = total[static_cast<std::size_t>(k - 1)];
    if (m == 0 || t == 0) return 0.0;  // no smoothing
    log_sum += std::log(static_cast<double>(m) / static_cast<double>(t)) / max_n;
  }
  const double bp =
      c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return bp * std::exp(log_sum);
}

// ----------------------------------------------------------------- ROUGE-L

int lcs_length(const std::vector<WordId>& a, const std::vector<WordId>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0);
  std::vector<int> curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        curr[j] = prev[j - 1] + 1;
      else
        curr[j] = std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double rouge_pair_score(const InternedPair& pair) {
  double best = 0.0;
  for (const auto& ref : pair.references) {
    const int lcs = lcs_length(pair.candidate, ref);
    if (lcs == 0) continue;
    const double recall = static_cast<double>(lcs) / static_cast<double>(ref.size());
    const double precision =
        static_cast<double>(lcs) / static_cast<double>(pair.candidate.size());
    const double b2 = kRougeBeta * kRougeBeta;
    const double f = (1.0 + b2) * recall * precision / (recall + b2 * precision);
    best = std::max(best, f);
  }
  return best;
}

// ------------------------------------------------------------------- CIDEr

// tf-idf vector for one sentence at one n-gram order.
struct TfIdfVec {
  NGramMap<double> weights;
  double norm = 0.0;
};

double cider_impl(const InternedCorpus& corpus, int workers,
                  std::vector<double>* per_pair_out) {
  const std::size_t n_pairs = corpus.pairs.size();
  const double log_n = std::log(static_cast<double>(n_pairs));

  // document frequency: number of pairs whose reference set contains the
  // n-gram (each image counted once)
  NGramMap<std::int64_t> df;
  for (const InternedPair& pair : corpus.pairs) {
    NGramMap<int> seen;
    for (int n = 1; n <= kMaxOrder; ++n)
      for (const auto& ref : pair.references)
        for (const auto& [key, count] : count_ngrams(ref, n)) seen.emplace(key, 1);
    for (const auto& [key, one] : seen) ++df[key];
  }

  auto idf = [&](const NGramKey& key) {
    const auto it = df.find(key);
    const std::int64_t d = it == df.end() ? 1 : it->second;
    return log_n - std::log(static_cast<double>(d));
  };
  auto tfidf = [&](const std::vector<WordId>& seq, int n) {
    TfIdfVec vec;
    double sq = 0.0;
    for (const auto& [key, count] : count_ngrams(seq, n)) {
      const double w = static_cast<double>(count) * idf(key);
      vec.weights.emplace(key, w);
      sq += w * w;
    }
    vec.norm = std::sqrt(sq);
    return vec;
  };

  std::vector<double> per_pair(n_pairs, 0.0);
  parallel_for(n_pairs, workers, [&](std::size_t i) {
    const InternedPair& pair = corpus.pairs[i];
    double pair_score = 0.0;
    for (int n = 1; n <= kMaxOrder; ++n) {
      const TfIdfVec cand = tfidf(pair.candidate, n);
      double sim_sum = 0.0;
      for (const auto& ref : pair.references) {
        const TfIdfVec rv = tfidf(ref, n);
        if (cand.norm <= 0.0 || rv.norm <= 0.0) continue;
        double dot = 0.0;
        for (const auto& [key, w] : cand.weights)
          if (auto it = rv.weights.find(key); it != rv.weights.end()) dot += w * it->second;
        sim_sum += dot / (cand.norm * rv.norm);
      }
      pair_score += sim_sum / static_cast<double>(pair.references.size());
    }
    per_pair[i] = 10.0 * pair_score / kMaxOrder;
  });

  double total = 0.0;
  for (const double s : per_pair) total += s;
  if (per_pair_out) *per_pair_out = std::move(per_pair);
  return total / static_cast<double>(n_pairs);
}

// ------------------------------------------------------------- METEOR-lite

// Two-stage alignment: maximum exact matching, then maximum stem matching on
// the residual. The match count per key is forced by the stage structure, so
// the search below only decides which positions pair up, minimizing the
// chunk count. A two-stage greedy pass supplies a guaranteed-complete
// initial alignment; a bounded branch-and-bound then looks for fewer chunks.
class MeteorAligner {
 public:
  MeteorAligner(const std::vector<WordId>& cand, const std::vector<WordId>& ref,
                const std::vector<WordId>& cand_stems,
                const std::vector<WordId>& ref_stems)
      : cand_(cand), ref_(ref), cand_stems_(cand_stems), ref_stems_(ref_stems) {
    std::unordered_map<WordId, int> cand_counts, ref_counts;
    for (const WordId w : cand_) ++cand_counts[w];
    for (const WordId w : ref_) ++ref_counts[w];
    for (const auto& [w, cc] : cand_counts)
      if (auto it = ref_counts.find(w); it != ref_counts.end())
        exact_quota_[w] = std::min(cc, it->second);

    std::unordered_map<WordId, int> cand_resid, ref_resid;
    for (const auto& [w, cc] : cand_counts) {
      const int left = cc - quota_of(exact_quota_, w);
      if (left > 0) cand_resid[stem_of_word(w, cand_, cand_stems_)] += left;
    }
    for (const auto& [w, rc] : ref_counts) {
      const int left = rc - quota_of(exact_quota_, w);
      if (left > 0) ref_resid[stem_of_word(w, ref_, ref_stems_)] += left;
    }
    for (const auto& [s, cc] : cand_resid)
      if (auto it = ref_resid.find(s); it != ref_resid.end())
        stem_quota_[s] = std::min(cc, it->second);

    for (const auto& [w, q] : exact_quota_) total_matches_ += q;
    for (const auto& [s, q] : stem_quota_) total_matches_ += q;
  }

  int total_matches() const { return total_matches_; }

  // Minimal chunk count over all maximal two-stage alignments (subject to a
  // node budget; the greedy bound is used if the search is cut short).
  int min_chunks() {
    if (total_matches_ == 0) return 0;
    best_chunks_ = greedy_chunks();
    if (best_chunks_ > 1) {
      ref_used_.assign(ref_.size(), false);
      exact_left_ = exact_quota_;
      stem_left_ = stem_quota_;
      search(0, total_matches_);
    }
    return best_chunks_;
  }

 private:
  static int quota_of(const std::unordered_map<WordId, int>& quota, WordId key) {
    const auto it = quota.find(key);
    return it == quota.end() ? 0 : it->second;
  }

  static WordId stem_of_word(WordId w, const std::vector<WordId>& words,
                             const std::vector<WordId>& stems) {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] == w) return stems[i];
    return w;
  }

  static int count_chunks(const std::vector<int>& match_of) {
    int chunks = 0;
    int prev_i = -2, prev_j = -2;
    for (std::size_t i = 0; i < match_of.size(); ++i) {
      if (match_of[i] < 0) continue;
      if (!(static_cast<int>(i) == prev_i + 1 && match_of[i] == prev_j + 1)) ++chunks;
      prev_i = static_cast<int>(i);
      prev_j = match_of[i];
    }
    return chunks;
  }

  // Always produces a complete (quota-exact) alignment: per key the smaller
  // side bounds the quota, so a free partner exists whenever quota remains.
  int greedy_chunks() const {
    std::vector<int> match_of(cand_.size(), -1);
    std::vector<bool> used(ref_.size(), false);
    auto exact = exact_quota_;
    for (std::size_t i = 0; i < cand_.size(); ++i) {
      if (quota_of(exact, cand_[i]) <= 0) continue;
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (!used[j] && ref_[j] == cand_[i]) {
          match_of[i] = static_cast<int>(j);
          used[j] = true;
          --exact[cand_[i]];
          break;
        }
      }
    }
    auto stem = stem_quota_;
    for (std::size_t i = 0; i < cand_.size(); ++i) {
      if (match_of[i] >= 0) continue;
      const WordId s = cand_stems_[i];
      if (quota_of(stem, s) <= 0) continue;
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (!used[j] && ref_stems_[j] == s) {
          match_of[i] = static_cast<int>(j);
          used[j] = true;
          --stem[s];
          break;
        }
      }
    }
    return count_chunks(match_of);
  }

  void search(std::size_t i, int quota_left) {
    if (chunks_ >= best_chunks_) return;
    if (++nodes_ > kNodeBudget) return;
    if (i == cand_.size()) {
      if (quota_left == 0) best_chunks_ = chunks_;  // guarded strictly better above
      return;
    }
    if (quota_left > static_cast<int>(cand_.size() - i)) return;

    const WordId w = cand_[i];
    const WordId s = cand_stems_[i];

    auto try_match = [&](std::size_t j, bool exact) {
      ref_used_[j] = true;
      const bool continues =
          static_cast<int>(i) == last_c_ + 1 && static_cast<int>(j) == last_r_ + 1;
      const int saved_c = last_c_, saved_r = last_r_;
      if (!continues) ++chunks_;
      last_c_ = static_cast<int>(i);
      last_r_ = static_cast<int>(j);
      if (exact) --exact_left_[w]; else --stem_left_[s];
      search(i + 1, quota_left - 1);
      if (exact) ++exact_left_[w]; else ++stem_left_[s];
      last_c_ = saved_c;
      last_r_ = saved_r;
      if (!continues) --chunks_;
      ref_used_[j] = false;
    };
    auto compatible = [&](std::size_t j, bool& exact) {
      if (ref_used_[j]) return false;
      if (ref_[j] == w) {
        exact = true;
        return quota_of(exact_left_, w) > 0;
      }
      exact = false;
      return ref_stems_[j] == s && quota_of(stem_left_, s) > 0;
    };

    // adjacency-continuing partner first: reaches low-chunk leaves early
    const std::size_t preferred = static_cast<int>(i) == last_c_ + 1 && last_r_ >= -1
                                      ? static_cast<std::size_t>(last_r_ + 1)
                                      : ref_.size();
    bool exact = false;
    if (preferred < ref_.size() && compatible(preferred, exact))
      try_match(preferred, exact);
    for (std::size_t j = 0; j < ref_.size(); ++j) {
      if (j == preferred) continue;
      if (compatible(j, exact)) try_match(j, exact);
    }
    search(i + 1, quota_left);  // leave position i unmatched
  }

  static constexpr std::int64_t kNodeBudget = 1 << 20;

  const std::vector<WordId>& cand_;
  const std::vector<WordId>& ref_;
  const std::vector<WordId>& cand_stems_;
  const std::vector<WordId>& ref_stems_;
  std::unordered_map<WordId, int> exact_quota_, stem_quota_;
  std::unordered_map<WordId, int> exact_left_, stem_left_;
  int total_matches_ = 0;
  std::vector<bool> ref_used_;
  int chunks_ = 0;
  int last_c_ = -2, last_r_ = -2;
  int best_chunks_ = 0;
  std::int64_t nodes_ = 0;
};

double meteor_pair_score(const InternedPair& pair,
                         const std::vector<WordId>& word_stems) {
  double best = 0.0;
  if (pair.candidate.empty()) return 0.0;
  std::vector<WordId> cand_stems(pair.candidate.size());
  for (std::size_t i = 0; i < pair.candidate.size(); ++i)
    cand_stems[i] = word_stems[pair.candidate[i]];

  for (const auto& ref : pair.references) {
    if (ref.empty()) continue;
    std::vector<WordId> ref_stems(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) ref_stems[i] = word_stems[ref[i]];

    MeteorAligner aligner(pair.candidate, ref, cand_stems, ref_stems);
    const int m = aligner.total_matches();
    if (m == 0) continue;
    const int chunks = aligner.min_chunks();

    const double precision =
        static_cast<double>(m) / static_cast<double>(pair.candidate.size());
    const double recall = static_cast<double>(m) / static_cast<double>(ref.size());
    const double f = precision * recall /
                     (kMeteorAlpha * precision + (1.0 - kMeteorAlpha) * recall);
    const double frag = static_cast<double>(chunks) / static_cast<double>(m);
    const double penalty = kMeteorGamma * std::pow(frag, kMeteorBeta);
    best = std::max(best, f * (1.0 - penalty));
  }
  return best;
}

// Stems interned into the same id space as the words themselves.
std::vector<WordId> build_stem_table(InternedCorpus& corpus) {
  const std::size_t n_words = corpus.vocabulary.size();
  std::unordered_map<std::string, WordId> ids;
  for (std::size_t i = 0; i < n_words; ++i)
    ids.emplace(corpus.vocabulary[i], static_cast<WordId>(i));

  std::vector<WordId> stems(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    const std::string stem = porter_stem(corpus.vocabulary[i]);
    auto [it, inserted] =
        ids.emplace(stem, static_cast<WordId>(corpus.vocabulary.size()));
    if (inserted) corpus.vocabulary.push_back(stem);
    stems[i] = it->second;
  }
  return stems;
}

double mean_of_pair_scores(const InternedCorpus& corpus, int workers,
                           const std::function<double(const InternedPair&)>& score,
                           std::vector<double>* per_pair_out) {
  std::vector<double> per_pair(corpus.pairs.size(), 0.0);
  parallel_for(corpus.pairs.size(), workers,
               [&](std::size_t i) { per_pair[i] = score(corpus.pairs[i]); });
  double total = 0.0;
  for (const double s : per_pair) total += s;
  const double mean = total / static_cast<double>(corpus.pairs.size());
  if (per_pair_out) *per_pair_out = std::move(per_pair);
  return mean;
}

}  // namespace

double bleu(std::span<const EvalPair> pairs, int max_n) {
  require_pairs(pairs, "bleu");
  if (max_n < 1 || max_n > kMaxOrder)
    throw ValidationError(fmt::format("bleu: max_n {} outside [1,4]", max_n));
  const InternedCorpus corpus = intern_pairs(pairs);
  return bleu_impl(corpus, max_n, 0);
}

double rouge_l(std::span<const EvalPair> pairs) {
  require_pairs(pairs, "rouge_l");
  const InternedCorpus corpus = intern_pairs(pairs);
  return mean_of_pair_scores(corpus, 0, rouge_pair_score, nullptr);
}

double cider(std::span<const EvalPair> pairs) {
  require_pairs(pairs, "cider");
  const InternedCorpus corpus = intern_pairs(pairs);
  return cider_impl(corpus, 0, nullptr);
}

double meteor_lite(std::span<const EvalPair> pairs) {
  require_pairs(pairs, "meteor_lite");
  InternedCorpus corpus = intern_pairs(pairs);
  const std::vector<WordId> stems = build_stem_table(corpus);
  return mean_of_pair_scores(
      corpus, 0, [&](const InternedPair& p) { return meteor_pair_score(p, stems); },
      nullptr);
}

MetricReport evaluate(std::span<const EvalPair> pairs, bool with_per_image,
                      int workers) {
  require_pairs(pairs, "evaluate");
  InternedCorpus corpus = intern_pairs(pairs);

  MetricReport report;
  report.n_images = pairs.size();
  report.bleu1 = bleu_impl(corpus, 1, workers);
  report.bleu2 = bleu_impl(corpus, 2, workers);
  report.bleu3 = bleu_impl(corpus, 3, workers);
  report.bleu4 = bleu_impl(corpus, 4, workers);

  std::vector<double> rouge_scores, cider_scores, meteor_scores;
  report.rouge_l = mean_of_pair_scores(corpus, workers, rouge_pair_score,
                                       with_per_image ? &rouge_scores : nullptr);
  report.cider = cider_impl(corpus, workers, with_per_image ? &cider_scores : nullptr);
  const std::vector<WordId> stems = build_stem_table(corpus);
  report.meteor_lite = mean_of_pair_scores(
      corpus, workers, [&](const InternedPair& p) { return meteor_pair_score(p, stems); },
      with_per_image ? &meteor_scores : nullptr);

  if (with_per_image) {
    report.per_image.resize(corpus.pairs.size());
    parallel_for(corpus.pairs.size(), workers, [&](std::size_t i) {
      PerImageScores row;
      row.image_id = corpus.pairs[i].image_id;
      row.rouge_l = rouge_scores[i];
      row.cider = cider_scores[i];
      row.meteor_lite = meteor_scores[i];
      InternedCorpus single;
      single.pairs.push_back(corpus.pairs[i]);
      row.bleu4 = bleu_impl(single, kMaxOrder, 1);
      report.per_image[i] = std::move(row);
    });
  }
  return report;
}

std::vector<EvalPair> build_eval_pairs(const CandidateCaptionFile& candidates,
                                       const Corpus& corpus, bool neutral_mode,
                                       const Lexicon& lexicon) {
  std::vector<std::int64_t> unknown;
  for (const auto& [id, caption] : candidates.entries)
    if (corpus.find(id) == nullptr) unknown.push_back(id);
  if (!unknown.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unknown.size() && i < 20; ++i)
      list += (i ? ", " : "") + std::to_string(unknown[i]);
    if (unknown.size() > 20)
      list += fmt::format(" and {} more", unknown.size() - 20);
    throw ValidationError(
        fmt::format("candidate image ids missing from corpus: {}", list));
  }

  auto to_norms = [&](const std::string& text) {
    if (neutral_mode) return norms_of(neutralize(lexicon, text).tokens);
    return norms_of(tokenize(text));
  };

  std::vector<EvalPair> pairs;
  pairs.reserve(candidates.entries.size());
  for (const auto& [id, caption] : candidates.entries) {
    const ImageRecord* rec = corpus.find(id);
    EvalPair pair;
    pair.image_id = id;
    pair.candidate = to_norms(caption);
    pair.references.reserve(rec->captions.size());
    for (const std::string& ref : rec->captions) pair.references.push_back(to_norms(ref));
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

GenderAccuracyReport gender_accuracy(const GenderPredictionFile& predictions,
                                     const SplitAssignment& splits) {
  if (splits.confident.empty())
    throw ValidationError("gender_accuracy: confident split is empty");
  GenderAccuracyReport report;
  report.n_confident = splits.confident.size();
  for (const auto& [id, truth] : splits.confident) {
    const auto it = predictions.entries.find(id);
    if (it == predictions.entries.end()) continue;
    ++report.n_scored;
    if (it->second.label == truth) ++report.n_correct;  // Unknown never matches
  }
  if (report.n_scored == 0)
    throw ValidationError(
        "gender_accuracy: no prediction covers any confident-split image");
  report.accuracy =
      static_cast<double>(report.n_correct) / static_cast<double>(report.n_scored);
  report.coverage =
      static_cast<double>(report.n_scored) / static_cast<double>(report.n_confident);
  return report;
}

void write_per_image_csv(const std::vector<PerImageScores>& rows,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << "image_id,bleu4,rouge_l,meteor_lite,cider_pair\n";
  for (const PerImageScores& r : rows)
    out << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.image_id, r.bleu4,
                       r.rouge_l, r.meteor_lite, r.cider);
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace capfair
