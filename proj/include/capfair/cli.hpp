#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capfair/report.hpp"

namespace capfair {

// Parsed command-line configuration shared by all subcommands.
struct RunConfig {
  std::string command;
  std::filesystem::path annotations_path;
  std::optional<std::filesystem::path> lexicon_path;  // else CAPFAIR_LEXICON, else defaults
  std::vector<std::pair<std::string, std::filesystem::path>> candidates;  // label -> path
  std::optional<std::filesystem::path> predictions_path;
  std::string split = "all";  // confident | human | nature | all
  bool neutral_mode = false;
  std::int64_t min_support = 5;
  std::int64_t top_k = 20;
  std::filesystem::path output_dir = "capfair_out";
  int workers = 0;  // 0 = all cores
  std::uint64_t seed = 0;
};

// Each command loads its inputs, runs the pipeline, writes its artifacts and
// report.txt/report.json under config.output_dir, and returns the report.
RunReport cmd_split(const RunConfig& config);
RunReport cmd_neutralize(const RunConfig& config);
RunReport cmd_recombine(const RunConfig& config);
RunReport cmd_evaluate(const RunConfig& config);
RunReport cmd_bias_report(const RunConfig& config);
RunReport cmd_gender_accuracy(const RunConfig& config);

// Dispatch by config.command; throws capfair::Error subclasses on failure.
RunReport run_command(const RunConfig& config);

}  // namespace capfair
