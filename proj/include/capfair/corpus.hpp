#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capfair/lexicon.hpp"

namespace capfair {

struct ImageRecord {
  std::int64_t image_id = 0;
  std::string file_name;
  std::vector<std::string> captions;  // raw text, stored untouched

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

// Immutable collection of image records, kept in ascending image_id order so
// that every downstream report is byte-reproducible.
class Corpus {
 public:
  Corpus() = default;
  // Sorts by image_id and validates uniqueness and caption invariants.
  Corpus(std::vector<ImageRecord> images, std::string source_label);

  const std::vector<ImageRecord>& images() const { return images_; }
  const std::string& source_label() const { return source_label_; }
  std::size_t size() const { return images_.size(); }
  bool empty() const { return images_.empty(); }

  // nullptr when absent.
  const ImageRecord* find(std::int64_t image_id) const;

 private:
  std::vector<ImageRecord> images_;
  std::string source_label_;
};

struct GenderPrediction {
  GenderLabel label = GenderLabel::Unknown;
  std::optional<double> confidence;  // in [0,1] when present
};

// Externalized output of a gender-identification model, keyed by image.
struct GenderPredictionFile {
  std::map<std::int64_t, GenderPrediction> entries;
};

// One predicted caption per image (a captioner's top beam).
struct CandidateCaptionFile {
  std::map<std::int64_t, std::string> entries;
};

// MSCOCO captions annotation schema: top-level "images" array with
// id/file_name, "annotations" array with image_id/caption. Images without
// annotations are dropped with a warning.
Corpus load_coco_annotations(const std::filesystem::path& path);

// Same schema; load(write(c)) == c record for record.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// JSON array of {image_id, label, confidence?} or CSV with header
// image_id,label,confidence. Labels are lowercased; only male/female/unknown
// are accepted.
GenderPredictionFile load_gender_predictions(const std::filesystem::path& path);

// JSON array of {image_id, caption}.
CandidateCaptionFile load_candidates(const std::filesystem::path& path);
void write_candidates(const CandidateCaptionFile& candidates,
                      const std::filesystem::path& path);

}  // namespace capfair
