#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "capfair/cli.hpp"
#include "capfair/errors.hpp"
#include "capfair/report.hpp"

namespace {

std::pair<std::string, std::filesystem::path> parse_candidate_arg(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
    throw capfair::ValidationError(
        "--candidates expects LABEL=PATH, e.g. --candidates SAT=sat_captions.json");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

void add_common_options(CLI::App* cmd, capfair::RunConfig& config,
                        std::vector<std::string>& candidate_args) {
  cmd->add_option("--annotations", config.annotations_path,
                  "MSCOCO captions annotation file");
  cmd->add_option("--lexicon", config.lexicon_path,
                  "lexicon config file (default: $CAPFAIR_LEXICON or builtin)");
  cmd->add_option("--candidates", candidate_args,
                  "candidate caption file as LABEL=PATH (repeatable)");
  cmd->add_option("--predictions", config.predictions_path,
                  "gender prediction file (JSON array or CSV)");
  cmd->add_option("--split", config.split, "restrict scoring to a split")
      ->check(CLI::IsMember({"confident", "human", "nature", "all"}));
  cmd->add_flag("--neutral", config.neutral_mode,
                "neutralize candidates and references before scoring (-N protocol)");
  cmd->add_option("--min-support", config.min_support,
                  "minimum gendered-image co-occurrences for a bias row (default 5)");
  cmd->add_option("--top-k", config.top_k,
                  "extreme bias rows shown in the report (default 20)");
  cmd->add_option("--out", config.output_dir,
                  "output directory, created if absent (default capfair_out)");
  cmd->add_option("--workers", config.workers, "worker threads, 0 = all cores");
  cmd->add_option("--seed", config.seed, "seed echoed into reports for provenance");
}

constexpr const char* kOutputsHelp = R"(Output files (under --out):
  split:            confident.json human.json nature.json report.txt report.json
  neutralize:       neutral_corpus.json audit.csv and/or
                    neutral_candidates_<LABEL>.json audit_<LABEL>.csv
  recombine:        recombined_<LABEL>.json
  evaluate:         per_image_<LABEL>.csv report.txt report.json
  bias-report:      bias.csv report.txt report.json
  gender-accuracy:  report.txt report.json
Every command also writes report.txt and report.json.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("caption-corpus fairness toolkit ") +
               std::string(capfair::kToolVersion)};
  app.footer(kOutputsHelp);
  app.require_subcommand(1);

  capfair::RunConfig config;
  std::vector<std::string> candidate_args;

  for (const char* name : {"split", "neutralize", "recombine", "evaluate",
                           "bias-report", "gender-accuracy"}) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common_options(cmd, config, candidate_args);
  }
  app.get_subcommand("split")->description("build the confident/human/nature splits");
  app.get_subcommand("neutralize")
      ->description("replace gendered words with neutral targets");
  app.get_subcommand("recombine")
      ->description("re-gender neutral captions from a prediction file");
  app.get_subcommand("evaluate")
      ->description("score candidate sets with BLEU, ROUGE_L, CIDEr, METEOR-lite");
  app.get_subcommand("bias-report")
      ->description("gender/word co-occurrence statistics");
  app.get_subcommand("gender-accuracy")
      ->description("score gender predictions against the confident split");

  CLI11_PARSE(app, argc, argv);

  try {
    config.command = app.get_subcommands().front()->get_name();
    for (const std::string& arg : candidate_args)
      config.candidates.push_back(parse_candidate_arg(arg));

    const auto start = std::chrono::steady_clock::now();
    capfair::run_command(config);
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::cout << fmt::format("capfair {}: completed in {:.3f}s, outputs in {}\n",
                             config.command, elapsed.count(),
                             config.output_dir.string());
  } catch (const capfair::Error& e) {
    std::cerr << "capfair: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "capfair: unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
