#include "capfair/transform.hpp"

#include <fmt/format.h>

#include <fstream>

#include "capfair/errors.hpp"
#include "capfair/parallel.hpp"

namespace capfair {

NeutralCaption neutralize(const Lexicon& lexicon, std::string_view caption) {
  NeutralCaption out;
  out.tokens = tokenize(caption);
  for (Token& tok : out.tokens) {
    const GenderClass c = lexicon.classify(tok);
    if (!is_gendered(c)) continue;
    const std::string& target = lexicon.neutral_target(is_plural(c));
    out.replaced_positions.insert(tok.position);
    out.original_classes.emplace(tok.position, c);
    tok.surface = target;
    tok.norm = target;
  }
  return out;
}

std::string recombine(const Lexicon& lexicon, const NeutralCaption& neutral,
                      GenderLabel gender) {
  if (gender == GenderLabel::Unknown) return render(neutral.tokens);
  std::vector<Token> tokens = neutral.tokens;
  const std::string& singular = lexicon.neutral_target(false);
  const std::string& plural = lexicon.neutral_target(true);
  for (Token& tok : tokens) {
    // all occurrences, including ones the captioner emitted natively
    if (tok.norm == singular) {
      tok.surface = tok.norm = lexicon.gendered_target(gender, false);
    } else if (tok.norm == plural) {
      tok.surface = tok.norm = lexicon.gendered_target(gender, true);
    }
  }
  return render(tokens);
}

namespace {

std::string neutralize_one(const Lexicon& lexicon, std::string_view caption,
                           std::int64_t image_id, std::size_t caption_index,
                           std::vector<ReplacementRecord>* audit) {
  const NeutralCaption neutral = neutralize(lexicon, caption);
  if (audit) {
    const std::vector<Token> original = tokenize(caption);
    for (const std::size_t pos : neutral.replaced_positions)
      audit->push_back(ReplacementRecord{image_id, caption_index, pos,
                                         original[pos].surface,
                                         neutral.tokens[pos].surface});
  }
  return render(neutral.tokens);
}

}  // namespace

Corpus neutralize_corpus(const Lexicon& lexicon, const Corpus& corpus, int workers,
                         std::vector<ReplacementRecord>* audit) {
  const std::vector<ImageRecord>& images = corpus.images();
  std::vector<ImageRecord> out(images.size());
  std::vector<std::vector<ReplacementRecord>> audits(audit ? images.size() : 0);
  parallel_for(images.size(), workers, [&](std::size_t i) {
    const ImageRecord& rec = images[i];
    ImageRecord neutral_rec{rec.image_id, rec.file_name, {}};
    neutral_rec.captions.reserve(rec.captions.size());
    for (std::size_t k = 0; k < rec.captions.size(); ++k)
      neutral_rec.captions.push_back(neutralize_one(lexicon, rec.captions[k],
                                                    rec.image_id, k,
                                                    audit ? &audits[i] : nullptr));
    out[i] = std::move(neutral_rec);
  });
  if (audit)
    for (std::vector<ReplacementRecord>& part : audits)
      audit->insert(audit->end(), part.begin(), part.end());
  return Corpus(std::move(out), corpus.source_label());
}

CandidateCaptionFile neutralize_candidates(const Lexicon& lexicon,
                                           const CandidateCaptionFile& candidates,
                                           std::vector<ReplacementRecord>* audit) {
  CandidateCaptionFile out;
  for (const auto& [id, caption] : candidates.entries)
    out.entries.emplace(id, neutralize_one(lexicon, caption, id, 0, audit));
  return out;
}

CandidateCaptionFile sai_pipeline(const Lexicon& lexicon,
                                  const CandidateCaptionFile& candidates,
                                  const GenderPredictionFile& predictions) {
  CandidateCaptionFile out;
  for (const auto& [id, caption] : candidates.entries) {
    // re-neutralizing is harmless on already neutral text and makes the
    // pipeline total over gendered captioner output
    const NeutralCaption neutral = neutralize(lexicon, caption);
    GenderLabel gender = GenderLabel::Unknown;
    if (auto it = predictions.entries.find(id); it != predictions.entries.end())
      gender = it->second.label;
    out.entries.emplace(id, recombine(lexicon, neutral, gender));
  }
  return out;
}

void write_audit_csv(const std::vector<ReplacementRecord>& audit,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << "image_id,caption_index,position,original,replacement\n";
  for (const ReplacementRecord& rec : audit)
    out << rec.image_id << ',' << rec.caption_index << ',' << rec.position << ','
        << rec.original << ',' << rec.replacement << '\n';
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace capfair
