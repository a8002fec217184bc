#include "capfair/splits.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "capfair/errors.hpp"
#include "capfair/parallel.hpp"

namespace capfair {

std::string_view to_string(ConsensusVerdict v) {
  switch (v) {
    case ConsensusVerdict::ConfidentMale: return "confident_male";
    case ConsensusVerdict::ConfidentFemale: return "confident_female";
    case ConsensusVerdict::HumanMixed: return "human_mixed";
    case ConsensusVerdict::NoHuman: return "no_human";
  }
  return "no_human";
}

ImageConsensus consensus(const Lexicon& lexicon, const ImageRecord& image) {
  ImageConsensus result;
  result.image_id = image.image_id;
  result.per_caption.reserve(image.captions.size());

  bool all_male = true;    // every caption: >=1 male token, 0 female tokens
  bool all_female = true;
  bool any_human = false;
  for (const std::string& caption : image.captions) {
    CaptionGenderCounts counts;
    for (const Token& tok : tokenize(caption)) {
      const GenderClass c = lexicon.classify(tok);
      if (is_male(c)) ++counts.male;
      else if (is_female(c)) ++counts.female;
      else if (is_neutral_human(c)) ++counts.neutral_human;
    }
    all_male = all_male && counts.male >= 1 && counts.female == 0;
    all_female = all_female && counts.female >= 1 && counts.male == 0;
    any_human = any_human || counts.male + counts.female + counts.neutral_human > 0;
    result.per_caption.push_back(counts);
  }

  if (!any_human)
    result.verdict = ConsensusVerdict::NoHuman;
  else if (all_male)
    result.verdict = ConsensusVerdict::ConfidentMale;
  else if (all_female)
    result.verdict = ConsensusVerdict::ConfidentFemale;
  else
    result.verdict = ConsensusVerdict::HumanMixed;
  return result;
}

SplitAssignment build_splits(const Lexicon& lexicon, const Corpus& corpus, int workers) {
  const std::vector<ImageRecord>& images = corpus.images();
  std::vector<ConsensusVerdict> verdicts(images.size());
  parallel_for(images.size(), workers, [&](std::size_t i) {
    verdicts[i] = consensus(lexicon, images[i]).verdict;
  });

  SplitAssignment assignment;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::int64_t id = images[i].image_id;
    switch (verdicts[i]) {
      case ConsensusVerdict::ConfidentMale:
        assignment.confident.emplace(id, GenderLabel::Male);
        assignment.human.insert(id);
        break;
      case ConsensusVerdict::ConfidentFemale:
        assignment.confident.emplace(id, GenderLabel::Female);
        assignment.human.insert(id);
        break;
      case ConsensusVerdict::HumanMixed:
        assignment.human.insert(id);
        break;
      case ConsensusVerdict::NoHuman:
        assignment.nature.insert(id);
        break;
    }
  }
  return assignment;
}

Corpus filter_corpus(const Corpus& corpus, const std::set<std::int64_t>& members,
                     std::string label) {
  std::vector<ImageRecord> kept;
  kept.reserve(members.size());
  for (const ImageRecord& rec : corpus.images())
    if (members.contains(rec.image_id)) kept.push_back(rec);
  return Corpus(std::move(kept), std::move(label));
}

void export_split(const SplitAssignment& assignment, std::string_view which,
                  const Corpus& corpus, const std::filesystem::path& path) {
  std::set<std::int64_t> members;
  if (which == "confident") {
    for (const auto& [id, gender] : assignment.confident) members.insert(id);
  } else if (which == "human") {
    members = assignment.human;
  } else if (which == "nature") {
    members = assignment.nature;
  } else {
    throw ValidationError(fmt::format(
        "unknown split '{}' (expected confident, human or nature)", which));
  }
  const Corpus sub = filter_corpus(
      corpus, members, fmt::format("{}:{}", corpus.source_label(), which));
  write_corpus(sub, path);
}

}  // namespace capfair
