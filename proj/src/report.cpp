#include "capfair/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <nlohmann/json.hpp>

#include "capfair/errors.hpp"

namespace capfair {

namespace {

constexpr std::array<std::string_view, 7> kColumns = {
    "Bleu1", "Bleu2", "Bleu3", "Bleu4", "METEOR-lite", "ROUGE_L", "CIDEr"};

std::array<double, 7> column_values(const MetricReport& r) {
  return {r.bleu1, r.bleu2, r.bleu3, r.bleu4, r.meteor_lite, r.rouge_l, r.cider};
}

}  // namespace

std::string format_metric_table(const std::vector<MetricRow>& rows) {
  std::size_t label_width = 5;  // "Model"
  for (const MetricRow& row : rows) label_width = std::max(label_width, row.label.size());

  std::array<std::size_t, 7> widths{};
  for (std::size_t c = 0; c < kColumns.size(); ++c)
    widths[c] = std::max<std::size_t>(kColumns[c].size(), 6);

  std::string out = fmt::format("{:<{}}", "Model", label_width);
  for (std::size_t c = 0; c < kColumns.size(); ++c)
    out += fmt::format("  {:>{}}", kColumns[c], widths[c]);
  out += '\n';
  for (const MetricRow& row : rows) {
    out += fmt::format("{:<{}}", row.label, label_width);
    const auto values = column_values(row.report);
    for (std::size_t c = 0; c < values.size(); ++c)
      out += fmt::format("  {:>{}}", fmt::format("{:.4f}", values[c]), widths[c]);
    out += '\n';
  }
  return out;
}

std::string RunReport::to_text() const {
  std::string out =
      fmt::format("# {} {} report (tool version {})\n", kToolName, command, kToolVersion);
  if (!config.empty()) {
    out += "\n[config]\n";
    for (const auto& [key, value] : config)
      out += fmt::format("{} = {}\n", key, value);
  }
  if (!split_sizes.empty()) {
    out += "\n[splits]\n";
    for (const auto& [name, size] : split_sizes)
      out += fmt::format("{} = {}\n", name, size);
  }
  if (!metric_rows.empty()) {
    out += "\n[metrics]\n";
    out += format_metric_table(metric_rows);
    for (const MetricRow& row : metric_rows)
      out += fmt::format("images[{}] = {}\n", row.label, row.report.n_images);
  }
  if (gender_accuracy) {
    const GenderAccuracyReport& g = *gender_accuracy;
    out += "\n[gender_accuracy]\n";
    out += fmt::format("accuracy = {:.6f} ({}/{})\n", g.accuracy, g.n_correct, g.n_scored);
    out += fmt::format("coverage = {:.6f} ({}/{})\n", g.coverage, g.n_scored, g.n_confident);
  }
  if (!notes.empty()) {
    out += "\n[notes]\n";
    for (const std::string& note : notes) out += fmt::format("- {}\n", note);
  }
  return out;
}

std::string RunReport::to_json() const {
  nlohmann::json root;
  root["tool"] = std::string(kToolName);
  root["version"] = std::string(kToolVersion);
  root["command"] = command;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  root["config"] = std::move(cfg);
  if (!split_sizes.empty()) {
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [name, size] : split_sizes) sizes[name] = size;
    root["split_sizes"] = std::move(sizes);
  }
  if (!metric_rows.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const MetricRow& row : metric_rows) {
      rows.push_back({{"label", row.label},
                      {"bleu1", row.report.bleu1},
                      {"bleu2", row.report.bleu2},
                      {"bleu3", row.report.bleu3},
                      {"bleu4", row.report.bleu4},
                      {"meteor_lite", row.report.meteor_lite},
                      {"rouge_l", row.report.rouge_l},
                      {"cider", row.report.cider},
                      {"n_images", row.report.n_images}});
    }
    root["metrics"] = std::move(rows);
  }
  if (gender_accuracy) {
    root["gender_accuracy"] = {{"accuracy", gender_accuracy->accuracy},
                               {"coverage", gender_accuracy->coverage},
                               {"n_confident", gender_accuracy->n_confident},
                               {"n_scored", gender_accuracy->n_scored},
                               {"n_correct", gender_accuracy->n_correct}};
  }
  if (!notes.empty()) root["notes"] = notes;
  return root.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << contents;
  out.flush();
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace capfair
