#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lexdiv/diversity.hpp"
#include "lexdiv/scoring.hpp"

namespace lexdiv::app {

struct RunConfig {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> candidates;
  std::filesystem::path dict;
  std::filesystem::path lemmas;
  std::filesystem::path scores;
  std::filesystem::path model;
  std::size_t n = 5;
  bool rank_sweep = false;
  std::filesystem::path out;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double mtld_threshold = kDefaultMtldThreshold;

  // train-scorer / score
  std::filesystem::path positives;
  std::filesystem::path negatives;
  std::filesystem::path eval_positives;
  std::filesystem::path eval_negatives;
  ScorerConfig scorer;

  // report
  std::vector<std::pair<std::string, std::filesystem::path>> systems;
  std::filesystem::path ht;
  std::filesystem::path vanilla;
  std::filesystem::path sweep;

  // bleu
  std::filesystem::path hyp;
  std::filesystem::path ref;
};

// Each command validates its configuration (ConfigError before any work),
// writes its outputs through an OutputStage into cfg.out, and prints progress
// and warnings to `log`. Errors propagate as exceptions after the partial
// outputs have been quarantined.

// diversity.csv plus chart_<metric>.svg strip charts grouped by book role.
void cmd_analyze(const RunConfig& cfg, std::ostream& log);
// correlation.csv and scatter_<metric>.csv for source/human-translation pairs.
void cmd_correlate(const RunConfig& cfg, std::ostream& log);
// sfa.csv and synonyms/<book>.csv for every translated book in the manifest.
void cmd_sfa(const RunConfig& cfg, std::ostream& log);
// model.json, training_log.csv and optionally eval.csv.
void cmd_train_scorer(const RunConfig& cfg, std::ostream& log);
// scores.tsv for candidates and/or eval.csv for labelled sentences.
void cmd_score(const RunConfig& cfg, std::ostream& log);
// Tailored reranking: profiles.csv, lexdiv.csv, assignments.csv, per-book
// documents and choice sidecars; rank_sweep.csv with --rank-sweep.
void cmd_rerank(const RunConfig& cfg, std::ostream& log);
// report_<metric>.svg, summary.csv and, given a sweep file, sweep_<metric>.svg.
void cmd_report(const RunConfig& cfg, std::ostream& log);
// bleu.csv for one hypothesis/reference document pair.
void cmd_bleu(const RunConfig& cfg, std::ostream& log);

}  // namespace lexdiv::app
