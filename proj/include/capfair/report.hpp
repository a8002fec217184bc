#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capfair/metrics.hpp"

namespace capfair {

inline constexpr std::string_view kToolName = "capfair";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct MetricRow {
  std::string label;  // user-supplied, e.g. SAT / SAI / SAT-N / SAI-N
  MetricReport report;
};

// Aligned-column table in the layout of the paper-style results tables:
// one row per candidate set, Bleu1..4, METEOR-lite, ROUGE_L, CIDEr columns.
std::string format_metric_table(const std::vector<MetricRow>& rows);

// Everything a command run reports. Serialization is byte-reproducible for
// identical inputs and config; wall-clock timing is therefore kept out of it
// and printed to stdout by the CLI instead.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed, in order
  std::vector<std::pair<std::string, std::size_t>> split_sizes;
  std::vector<MetricRow> metric_rows;
  std::optional<GenderAccuracyReport> gender_accuracy;
  std::vector<std::string> notes;

  std::string to_text() const;
  std::string to_json() const;
};

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace capfair
