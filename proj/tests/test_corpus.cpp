#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "capfair/corpus.hpp"
#include "capfair/errors.hpp"

using namespace capfair;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

constexpr const char* kMinimal = R"({
  "images": [{"id": 7, "file_name": "7.jpg"}],
  "annotations": [
    {"id": 1, "image_id": 7, "caption": "a man on a horse"},
    {"id": 2, "image_id": 7, "caption": "a person rides"}
  ]
})";

Corpus three_image_corpus() {
  return Corpus({{3, "c.jpg", {"fruit on a table"}},
                 {1, "a.jpg", {"a man riding", "a guy rides"}},
                 {2, "b.jpg", {"a woman cooking"}}},
                "three");
}

}  // namespace

TEST_CASE("minimal annotation file loads one image with two captions") {
  const auto path = write_temp("capfair_min.json", kMinimal);
  const Corpus corpus = load_coco_annotations(path);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus.images()[0].image_id == 7);
  CHECK(corpus.images()[0].file_name == "7.jpg");
  CHECK(corpus.images()[0].captions ==
        std::vector<std::string>{"a man on a horse", "a person rides"});
  fs::remove(path);
}

TEST_CASE("corpus constructor sorts ascending and validates") {
  const Corpus corpus = three_image_corpus();
  REQUIRE(corpus.size() == 3);
  CHECK(corpus.images()[0].image_id == 1);
  CHECK(corpus.images()[2].image_id == 3);
  CHECK(corpus.find(2) != nullptr);
  CHECK(corpus.find(99) == nullptr);
  CHECK_THROWS_AS(Corpus({{1, "a.jpg", {"x"}}, {1, "b.jpg", {"y"}}}, "dup"),
                  ValidationError);
  CHECK_THROWS_AS(Corpus({{1, "a.jpg", {}}}, "nocaps"), ValidationError);
  CHECK_THROWS_AS(Corpus({{1, "a.jpg", {"  "}}}, "blank"), ValidationError);
}

TEST_CASE("write then load round-trips record for record") {
  const Corpus corpus = three_image_corpus();
  const fs::path path = fs::temp_directory_path() / "capfair_rt.json";
  write_corpus(corpus, path);
  const Corpus loaded = load_coco_annotations(path);
  CHECK(loaded.images() == corpus.images());
  CHECK(loaded.source_label() == corpus.source_label());
  fs::remove(path);
}

TEST_CASE("empty corpus round-trips") {
  const fs::path path = fs::temp_directory_path() / "capfair_rt_empty.json";
  write_corpus(Corpus(), path);
  const Corpus loaded = load_coco_annotations(path);
  CHECK(loaded.empty());
  fs::remove(path);
}

TEST_CASE("write to an unwritable location raises IoError") {
  CHECK_THROWS_AS(write_corpus(Corpus(), "/nonexistent_dir/corpus.json"), IoError);
}

TEST_CASE("annotation citing an unknown image id is a validation error") {
  const auto path = write_temp("capfair_unknown.json", R"({
    "images": [{"id": 1, "file_name": "1.jpg"}],
    "annotations": [
      {"id": 1, "image_id": 1, "caption": "ok"},
      {"id": 2, "image_id": 999, "caption": "dangling"}
    ]
  })");
  CHECK_THROWS_WITH_AS(load_coco_annotations(path),
                       doctest::Contains("999"), ValidationError);
  fs::remove(path);
}

TEST_CASE("duplicate image id in the images array is rejected") {
  const auto path = write_temp("capfair_dupimg.json", R"({
    "images": [{"id": 1, "file_name": "1.jpg"}, {"id": 1, "file_name": "1b.jpg"}],
    "annotations": [{"id": 1, "image_id": 1, "caption": "x"}]
  })");
  CHECK_THROWS_AS(load_coco_annotations(path), ValidationError);
  fs::remove(path);
}

TEST_CASE("images without annotations are dropped") {
  const auto path = write_temp("capfair_drop.json", R"({
    "images": [{"id": 1, "file_name": "1.jpg"}, {"id": 2, "file_name": "2.jpg"}],
    "annotations": [{"id": 1, "image_id": 1, "caption": "only one"}]
  })");
  const Corpus corpus = load_coco_annotations(path);
  CHECK(corpus.size() == 1);
  CHECK(corpus.images()[0].image_id == 1);
  fs::remove(path);
}

TEST_CASE("malformed json is a parse error") {
  const auto path = write_temp("capfair_bad.json", "{images: nope");
  CHECK_THROWS_AS(load_coco_annotations(path), ParseError);
  fs::remove(path);
  const auto wrong_shape = write_temp("capfair_shape.json", R"({"images": 3})");
  CHECK_THROWS_AS(load_coco_annotations(wrong_shape), ParseError);
  fs::remove(wrong_shape);
  CHECK_THROWS_AS(load_coco_annotations("/nonexistent/x.json"), IoError);
}

TEST_CASE("gender predictions load from json") {
  const auto path = write_temp("capfair_pred.json", R"([
    {"image_id": 1, "label": "Male"},
    {"image_id": 2, "label": "female", "confidence": 0.75},
    {"image_id": 3, "label": "unknown"}
  ])");
  const GenderPredictionFile preds = load_gender_predictions(path);
  REQUIRE(preds.entries.size() == 3);
  CHECK(preds.entries.at(1).label == GenderLabel::Male);  // case-normalized
  CHECK(preds.entries.at(2).label == GenderLabel::Female);
  CHECK(preds.entries.at(2).confidence == 0.75);
  CHECK(preds.entries.at(3).label == GenderLabel::Unknown);
  CHECK(!preds.entries.at(1).confidence.has_value());
  fs::remove(path);
}

TEST_CASE("duplicate prediction id is rejected with the id in the message") {
  const auto path = write_temp("capfair_pred_dup.json",
                               R"([{"image_id": 1, "label": "Male"},
                                   {"image_id": 1, "label": "female"}])");
  CHECK_THROWS_WITH_AS(load_gender_predictions(path), doctest::Contains("1"),
                       ValidationError);
  fs::remove(path);
}

TEST_CASE("prediction label outside the class set is rejected") {
  const auto path = write_temp("capfair_pred_person.json",
                               R"([{"image_id": 2, "label": "person"}])");
  CHECK_THROWS_AS(load_gender_predictions(path), ValidationError);
  fs::remove(path);
}

TEST_CASE("prediction confidence outside [0,1] is rejected") {
  const auto path = write_temp("capfair_pred_conf.json",
                               R"([{"image_id": 2, "label": "male", "confidence": 1.5}])");
  CHECK_THROWS_AS(load_gender_predictions(path), ValidationError);
  fs::remove(path);
}

TEST_CASE("gender predictions load from csv") {
  const auto path = write_temp("capfair_pred.csv",
                               "image_id,label,confidence\n"
                               "1,male,0.9\n"
                               "2,FEMALE,\n"
                               "3,unknown\n");
  const GenderPredictionFile preds = load_gender_predictions(path);
  REQUIRE(preds.entries.size() == 3);
  CHECK(preds.entries.at(1).label == GenderLabel::Male);
  CHECK(preds.entries.at(1).confidence == 0.9);
  CHECK(preds.entries.at(2).label == GenderLabel::Female);
  CHECK(!preds.entries.at(2).confidence.has_value());
  fs::remove(path);

  const auto no_header = write_temp("capfair_pred_nohdr.csv", "1,male\n");
  CHECK_THROWS_AS(load_gender_predictions(no_header), ParseError);
  fs::remove(no_header);
}

TEST_CASE("candidate files load, reject duplicates and round-trip") {
  const auto path = write_temp("capfair_cand.json", R"([
    {"image_id": 2, "caption": "a person on a surfboard"},
    {"image_id": 1, "caption": "a dog"}
  ])");
  const CandidateCaptionFile cands = load_candidates(path);
  REQUIRE(cands.entries.size() == 2);
  CHECK(cands.entries.at(2) == "a person on a surfboard");
  fs::remove(path);

  const fs::path out = fs::temp_directory_path() / "capfair_cand_rt.json";
  write_candidates(cands, out);
  CHECK(load_candidates(out).entries == cands.entries);
  fs::remove(out);

  const auto dup = write_temp("capfair_cand_dup.json",
                              R"([{"image_id": 1, "caption": "a"},
                                  {"image_id": 1, "caption": "b"}])");
  CHECK_THROWS_AS(load_candidates(dup), ValidationError);
  fs::remove(dup);
}
