// lexdiv: lexical diversity analysis and tailored n-best reranking.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lexdiv/app/commands.hpp"
#include "lexdiv/error.hpp"

namespace {

using lexdiv::app::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "Output directory")->required();
  cmd->add_option("--seed", cfg.seed, "Random seed (recorded in the run manifest)");
  cmd->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
}

void add_threshold(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mtld-threshold", cfg.mtld_threshold, "MTLD TTR threshold")->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical diversity metrics, synonym frequency analysis and tailored n-best reranking"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> systems;

  auto* analyze = app.add_subcommand("analyze", "Per-book TTR, Yule's I and MTLD with range/spread charts");
  analyze->add_option("--manifest", cfg.manifest, "Book manifest (TSV)")->required();
  add_threshold(analyze, cfg);
  add_common(analyze, cfg);

  auto* correlate = app.add_subcommand("correlate", "Pearson correlation of human-translation vs source metrics");
  correlate->add_option("--manifest", cfg.manifest, "Book manifest (TSV)")->required();
  add_threshold(correlate, cfg);
  add_common(correlate, cfg);

  auto* sfa = app.add_subcommand("sfa", "Synonym frequency analysis (PTF, CDU, SynTTR)");
  sfa->add_option("--manifest", cfg.manifest, "Book manifest (TSV)")->required();
  sfa->add_option("--dict", cfg.dict, "Bilingual dictionary (TSV)")->required();
  sfa->add_option("--lemmas", cfg.lemmas, "Source lemma annotations (TSV blocks)")->required();
  add_common(sfa, cfg);

  auto* train = app.add_subcommand("train-scorer", "Train the character n-gram originality classifier");
  train->add_option("--positives", cfg.positives, "Original target-language sentences, one per line")->required();
  train->add_option("--negatives", cfg.negatives, "Translated sentences, one per line")->required();
  train->add_option("--eval-positives", cfg.eval_positives, "Held-out original sentences");
  train->add_option("--eval-negatives", cfg.eval_negatives, "Held-out translated sentences");
  train->add_option("--epochs", cfg.scorer.epochs, "Training epochs");
  train->add_option("--lr", cfg.scorer.learning_rate, "Learning rate");
  train->add_option("--batch-size", cfg.scorer.batch_size, "Mini-batch size");
  train->add_option("--dim-log2", cfg.scorer.dim_log2, "log2 of the hashed feature dimension");
  add_common(train, cfg);

  auto* score = app.add_subcommand("score", "Score candidates or evaluate labelled sentences with a model");
  score->add_option("--model", cfg.model, "Model file from train-scorer")->required();
  score->add_option("--candidates", cfg.candidates, "Candidate JSON-lines file(s)");
  score->add_option("--eval-positives", cfg.eval_positives, "Labelled original sentences");
  score->add_option("--eval-negatives", cfg.eval_negatives, "Labelled translated sentences");
  add_common(score, cfg);

  auto* rerank = app.add_subcommand("rerank", "Tailored n-best reranking by source-book lexical diversity");
  rerank->add_option("--manifest", cfg.manifest, "Book manifest (TSV); source books are profiled")->required();
  rerank->add_option("--candidates", cfg.candidates, "Candidate JSON-lines file(s)")->required();
  auto* scores_opt = rerank->add_option("--scores", cfg.scores, "Precomputed scores (TSV)");
  rerank->add_option("--model", cfg.model, "Scorer model (JSON)")->excludes(scores_opt);
  rerank->add_option("--n", cfg.n, "Number of originality ranks / bins");
  rerank->add_flag("--rank-sweep", cfg.rank_sweep, "Also select every rank 1..n and profile each output");
  add_threshold(rerank, cfg);
  add_common(rerank, cfg);

  auto* report = app.add_subcommand("report", "Per-book comparison charts and cross-system summary");
  report->add_option("--system", systems, "NAME=metrics.csv (repeatable)")->required();
  report->add_option("--ht", cfg.ht, "Human-translation metrics CSV (reference line)");
  report->add_option("--vanilla", cfg.vanilla, "Vanilla MT metrics CSV (reference line)");
  report->add_option("--sweep", cfg.sweep, "rank_sweep.csv from rerank --rank-sweep");
  add_common(report, cfg);

  auto* bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis document against a reference");
  bleu->add_option("--hyp", cfg.hyp, "Hypothesis document")->required();
  bleu->add_option("--ref", cfg.ref, "Reference document")->required();
  add_common(bleu, cfg);

  CLI11_PARSE(app, argc, argv);

  for (const auto& s : systems) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --system expects NAME=PATH, got '" << s << "'\n";
      return 2;
    }
    cfg.systems.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }

  const std::map<CLI::App*, void (*)(const RunConfig&, std::ostream&)> commands{
      {analyze, lexdiv::app::cmd_analyze}, {correlate, lexdiv::app::cmd_correlate},
      {sfa, lexdiv::app::cmd_sfa},         {train, lexdiv::app::cmd_train_scorer},
      {score, lexdiv::app::cmd_score},     {rerank, lexdiv::app::cmd_rerank},
      {report, lexdiv::app::cmd_report},   {bleu, lexdiv::app::cmd_bleu},
  };
  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) fn(cfg, std::cerr);
    }
  } catch (const lexdiv::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
