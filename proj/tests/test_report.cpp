#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "capfair/report.hpp"

using namespace capfair;

namespace {

MetricReport synthetic(double b1, double b2, double b3, double b4, double met,
                       double rl, double cd, std::size_t n) {
  MetricReport r;
  r.bleu1 = b1;
  r.bleu2 = b2;
  r.bleu3 = b3;
  r.bleu4 = b4;
  r.meteor_lite = met;
  r.rouge_l = rl;
  r.cider = cd;
  r.n_images = n;
  return r;
}

// Rows shaped like the published confident-split table.
std::vector<MetricRow> golden_rows() {
  return {
      {"SAT", synthetic(0.59, 0.38, 0.25, 0.17, 0.20, 0.49, 0.44, 2036)},
      {"SAI", synthetic(0.59, 0.38, 0.24, 0.16, 0.19, 0.49, 0.43, 2036)},
      {"SAT-N", synthetic(0.62, 0.42, 0.28, 0.20, 0.22, 0.52, 0.44, 2036)},
      {"SAI-N", synthetic(0.64, 0.43, 0.29, 0.19, 0.22, 0.53, 0.44, 2036)},
  };
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("metric table layout matches the golden file byte for byte") {
  const std::string table = format_metric_table(golden_rows());
  const std::string golden =
      read_file(std::filesystem::path(CAPFAIR_TEST_DATA_DIR) / "golden_report.txt");
  CHECK(table == golden);
}

TEST_CASE("run report text is deterministic and carries every section") {
  RunReport report;
  report.command = "evaluate";
  report.config = {{"annotations", "val2014.json"}, {"split", "confident"}};
  report.split_sizes = {{"confident", 2036}};
  report.metric_rows = golden_rows();
  GenderAccuracyReport acc;
  acc.accuracy = 0.5;
  acc.coverage = 1.0;
  acc.n_confident = 2036;
  acc.n_scored = 2036;
  acc.n_correct = 1018;
  report.gender_accuracy = acc;
  report.notes = {"per-image diagnostics: per_image_SAT.csv"};

  const std::string text = report.to_text();
  CHECK(text == report.to_text());
  CHECK(text.find("[config]") != std::string::npos);
  CHECK(text.find("split = confident") != std::string::npos);
  CHECK(text.find("confident = 2036") != std::string::npos);
  CHECK(text.find("SAI-N") != std::string::npos);
  CHECK(text.find("accuracy = 0.500000 (1018/2036)") != std::string::npos);
  CHECK(text.find("per-image diagnostics") != std::string::npos);
  // wall-clock timing never lands in report files
  CHECK(text.find("seconds") == std::string::npos);

  const std::string json_text = report.to_json();
  CHECK(json_text == report.to_json());
  const nlohmann::json parsed = nlohmann::json::parse(json_text);
  CHECK(parsed["tool"] == "capfair");
  CHECK(parsed["command"] == "evaluate");
  CHECK(parsed["metrics"].size() == 4);
  CHECK(parsed["metrics"][0]["bleu1"] == 0.59);
  CHECK(parsed["gender_accuracy"]["n_correct"] == 1018);
}

TEST_CASE("empty report sections are omitted") {
  RunReport report;
  report.command = "split";
  const std::string text = report.to_text();
  CHECK(text.find("[splits]") == std::string::npos);
  CHECK(text.find("[metrics]") == std::string::npos);
  CHECK(text.find("[gender_accuracy]") == std::string::npos);
  const nlohmann::json parsed = nlohmann::json::parse(report.to_json());
  CHECK(!parsed.contains("metrics"));
  CHECK(!parsed.contains("split_sizes"));
}
