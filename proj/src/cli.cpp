#include "capfair/cli.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <iostream>

#include "capfair/bias.hpp"
#include "capfair/corpus.hpp"
#include "capfair/errors.hpp"
#include "capfair/lexicon.hpp"
#include "capfair/metrics.hpp"
#include "capfair/splits.hpp"
#include "capfair/transform.hpp"

namespace capfair {

namespace {

namespace fs = std::filesystem;

Lexicon load_lexicon_for(const RunConfig& config, RunReport& report) {
  fs::path path;
  if (config.lexicon_path) {
    path = *config.lexicon_path;
  } else if (const char* env = std::getenv("CAPFAIR_LEXICON"); env && *env) {
    path = env;
  } else {
    report.config.emplace_back("lexicon", "builtin defaults");
    return Lexicon::defaults();
  }
  report.config.emplace_back("lexicon", path.string());
  return Lexicon::load(path);
}

void require_annotations(const RunConfig& config) {
  if (config.annotations_path.empty())
    throw ValidationError(fmt::format(
        "{}: --annotations is required", config.command));
}

RunReport make_report(const RunConfig& config) {
  RunReport report;
  report.command = config.command;
  if (!config.annotations_path.empty())
    report.config.emplace_back("annotations", config.annotations_path.string());
  report.config.emplace_back("workers", std::to_string(config.workers));
  report.config.emplace_back("seed", std::to_string(config.seed));
  return report;
}

void finish_report(const RunConfig& config, RunReport& report) {
  report.config.emplace_back("out", config.output_dir.string());
  fs::create_directories(config.output_dir);
  write_text_file(config.output_dir / "report.txt", report.to_text());
  write_text_file(config.output_dir / "report.json", report.to_json());
}

std::set<std::int64_t> split_members(const SplitAssignment& splits,
                                     const std::string& which) {
  if (which == "human") return splits.human;
  if (which == "nature") return splits.nature;
  if (which == "confident") {
    std::set<std::int64_t> members;
    for (const auto& [id, g] : splits.confident) members.insert(id);
    return members;
  }
  throw ValidationError(
      fmt::format("unknown split '{}' (expected confident, human, nature or all)", which));
}

}  // namespace

RunReport cmd_split(const RunConfig& config) {
  require_annotations(config);
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);
  const Corpus corpus = load_coco_annotations(config.annotations_path);
  const SplitAssignment splits = build_splits(lexicon, corpus, config.workers);

  fs::create_directories(config.output_dir);
  for (const std::string which : {"confident", "human", "nature"})
    export_split(splits, which, corpus, config.output_dir / (which + ".json"));

  report.split_sizes = {{"confident", splits.confident.size()},
                        {"human", splits.human.size()},
                        {"nature", splits.nature.size()},
                        {"total", corpus.size()}};
  for (const auto& [name, size] : report.split_sizes)
    std::cout << fmt::format("split {}: {} images\n", name, size);
  report.notes.push_back("split files: confident.json, human.json, nature.json");
  finish_report(config, report);
  return report;
}

RunReport cmd_neutralize(const RunConfig& config) {
  if (config.annotations_path.empty() && config.candidates.empty())
    throw ValidationError(
        "neutralize: need --annotations and/or --candidates LABEL=PATH");
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);
  fs::create_directories(config.output_dir);

  if (!config.annotations_path.empty()) {
    const Corpus corpus = load_coco_annotations(config.annotations_path);
    std::vector<ReplacementRecord> audit;
    const Corpus neutral = neutralize_corpus(lexicon, corpus, config.workers, &audit);
    write_corpus(neutral, config.output_dir / "neutral_corpus.json");
    write_audit_csv(audit, config.output_dir / "audit.csv");
    report.notes.push_back(fmt::format(
        "corpus: {} images neutralized, {} replacements (neutral_corpus.json, audit.csv)",
        neutral.size(), audit.size()));
  }
  for (const auto& [label, path] : config.candidates) {
    report.config.emplace_back("candidates." + label, path.string());
    const CandidateCaptionFile candidates = load_candidates(path);
    std::vector<ReplacementRecord> audit;
    const CandidateCaptionFile neutral = neutralize_candidates(lexicon, candidates, &audit);
    const std::string out_name = fmt::format("neutral_candidates_{}.json", label);
    const std::string audit_name = fmt::format("audit_{}.csv", label);
    write_candidates(neutral, config.output_dir / out_name);
    write_audit_csv(audit, config.output_dir / audit_name);
    report.notes.push_back(fmt::format("candidates {}: {} captions, {} replacements ({}, {})",
                                       label, neutral.entries.size(), audit.size(),
                                       out_name, audit_name));
  }
  finish_report(config, report);
  return report;
}

RunReport cmd_recombine(const RunConfig& config) {
  if (config.candidates.size() != 1)
    throw ValidationError("recombine: exactly one --candidates LABEL=PATH is required");
  if (!config.predictions_path)
    throw ValidationError("recombine: --predictions is required");
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);

  const auto& [label, path] = config.candidates.front();
  report.config.emplace_back("candidates." + label, path.string());
  report.config.emplace_back("predictions", config.predictions_path->string());
  const CandidateCaptionFile candidates = load_candidates(path);
  const GenderPredictionFile predictions = load_gender_predictions(*config.predictions_path);
  const CandidateCaptionFile recombined = sai_pipeline(lexicon, candidates, predictions);

  fs::create_directories(config.output_dir);
  const std::string out_name = fmt::format("recombined_{}.json", label);
  write_candidates(recombined, config.output_dir / out_name);
  std::size_t with_prediction = 0;
  for (const auto& [id, caption] : candidates.entries)
    if (predictions.entries.contains(id)) ++with_prediction;
  report.notes.push_back(fmt::format("{}: {} captions recombined, {} with predictions ({})",
                                     label, recombined.entries.size(), with_prediction,
                                     out_name));
  finish_report(config, report);
  return report;
}

RunReport cmd_evaluate(const RunConfig& config) {
  require_annotations(config);
  if (config.candidates.empty())
    throw ValidationError("evaluate: at least one --candidates LABEL=PATH is required");
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);
  report.config.emplace_back("split", config.split);
  report.config.emplace_back("neutral", config.neutral_mode ? "true" : "false");

  const Corpus full = load_coco_annotations(config.annotations_path);
  Corpus scoped = full;
  if (config.split != "all") {
    const SplitAssignment splits = build_splits(lexicon, full, config.workers);
    scoped = filter_corpus(full, split_members(splits, config.split),
                           fmt::format("{}:{}", full.source_label(), config.split));
    report.split_sizes = {{"confident", splits.confident.size()},
                          {"human", splits.human.size()},
                          {"nature", splits.nature.size()},
                          {"scored", scoped.size()}};
  }

  fs::create_directories(config.output_dir);
  for (const auto& [label, path] : config.candidates) {
    report.config.emplace_back("candidates." + label, path.string());
    const CandidateCaptionFile loaded = load_candidates(path);
    // ids must exist in the full corpus even when scoring a narrower split
    std::vector<std::int64_t> unknown;
    for (const auto& [id, caption] : loaded.entries)
      if (full.find(id) == nullptr) unknown.push_back(id);
    if (!unknown.empty()) {
      std::string list;
      for (std::size_t i = 0; i < unknown.size() && i < 20; ++i)
        list += (i ? ", " : "") + std::to_string(unknown[i]);
      if (unknown.size() > 20) list += fmt::format(" and {} more", unknown.size() - 20);
      throw ValidationError(fmt::format(
          "evaluate: candidate set '{}' has image ids missing from the corpus: {}",
          label, list));
    }
    CandidateCaptionFile scoped_candidates;
    for (const auto& [id, caption] : loaded.entries)
      if (scoped.find(id) != nullptr) scoped_candidates.entries.emplace(id, caption);
    if (scoped_candidates.entries.empty())
      throw ValidationError(fmt::format(
          "evaluate: candidate set '{}' shares no image ids with the '{}' split", label,
          config.split));

    const std::vector<EvalPair> pairs =
        build_eval_pairs(scoped_candidates, scoped, config.neutral_mode, lexicon);
    MetricReport metrics = evaluate(pairs, true, config.workers);
    const std::string csv_name = fmt::format("per_image_{}.csv", label);
    write_per_image_csv(metrics.per_image, config.output_dir / csv_name);
    metrics.per_image.clear();
    report.metric_rows.push_back(MetricRow{label, std::move(metrics)});
    report.notes.push_back(fmt::format("per-image diagnostics: {}", csv_name));
  }
  report.notes.push_back(
      "CIDEr follows the original consensus formulation, not CIDEr-D");
  finish_report(config, report);
  return report;
}

RunReport cmd_bias_report(const RunConfig& config) {
  require_annotations(config);
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);
  report.config.emplace_back("min_support", std::to_string(config.min_support));
  report.config.emplace_back("top_k", std::to_string(config.top_k));

  const Corpus corpus = load_coco_annotations(config.annotations_path);
  const std::vector<BiasRow> rows =
      cooccurrence_table(lexicon, corpus, config.min_support, config.workers);

  fs::create_directories(config.output_dir);
  write_bias_csv(rows, config.output_dir / "bias.csv");
  report.notes.push_back(fmt::format("{} rows written to bias.csv", rows.size()));
  if (rows.empty()) {
    report.notes.push_back(
        "warning: empty co-occurrence table (no caption mentions a gendered word "
        "above min_support)");
  } else {
    report.notes.push_back(fmt::format("top {} extremes (word male female ratio support):",
                                       std::min<std::int64_t>(
                                           config.top_k,
                                           static_cast<std::int64_t>(rows.size()))));
    for (std::size_t i = 0;
         i < rows.size() && i < static_cast<std::size_t>(config.top_k); ++i) {
      const BiasRow& r = rows[i];
      report.notes.push_back(fmt::format("  {} {} {} {:.4f} {}", r.word, r.male_count,
                                         r.female_count, r.ratio, r.support));
    }
  }
  finish_report(config, report);
  return report;
}

RunReport cmd_gender_accuracy(const RunConfig& config) {
  require_annotations(config);
  if (!config.predictions_path)
    throw ValidationError("gender-accuracy: --predictions is required");
  RunReport report = make_report(config);
  const Lexicon lexicon = load_lexicon_for(config, report);
  report.config.emplace_back("predictions", config.predictions_path->string());

  const Corpus corpus = load_coco_annotations(config.annotations_path);
  const SplitAssignment splits = build_splits(lexicon, corpus, config.workers);
  const GenderPredictionFile predictions =
      load_gender_predictions(*config.predictions_path);
  report.split_sizes = {{"confident", splits.confident.size()}};
  report.gender_accuracy = gender_accuracy(predictions, splits);
  finish_report(config, report);
  return report;
}

RunReport run_command(const RunConfig& config) {
  if (config.command == "split") return cmd_split(config);
  if (config.command == "neutralize") return cmd_neutralize(config);
  if (config.command == "recombine") return cmd_recombine(config);
  if (config.command == "evaluate") return cmd_evaluate(config);
  if (config.command == "bias-report") return cmd_bias_report(config);
  if (config.command == "gender-accuracy") return cmd_gender_accuracy(config);
  throw ValidationError(fmt::format("unknown command '{}'", config.command));
}

}  // namespace capfair
