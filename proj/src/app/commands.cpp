#include "lexdiv/app/commands.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "lexdiv/app/output.hpp"
#include "lexdiv/app/parallel.hpp"
#include "lexdiv/app/pipeline.hpp"
#include "lexdiv/app/svg.hpp"
#include "lexdiv/bleu.hpp"
#include "lexdiv/error.hpp"
#include "lexdiv/evalstats.hpp"
#include "lexdiv/format.hpp"
#include "lexdiv/rerank.hpp"
#include "lexdiv/sfa.hpp"
#include "lexdiv/tailoring.hpp"

namespace lexdiv::app {
namespace fs = std::filesystem;
namespace {

struct GeneralMetric {
  const char* key;
  const char* label;
  std::optional<double> (*get)(const DiversityProfile&);
};

const GeneralMetric kGeneralMetrics[] = {
    {"ttr", "TTR", [](const DiversityProfile& p) -> std::optional<double> { return p.ttr; }},
    {"yules_i", "Yule's I", [](const DiversityProfile& p) { return p.yules_i; }},
    {"mtld", "MTLD", [](const DiversityProfile& p) { return p.mtld; }},
};

std::string metric_label(Metric m) {
  switch (m) {
    case Metric::kTtr: return "TTR";
    case Metric::kYulesI: return "Yule's I";
    case Metric::kMtld: return "MTLD";
    case Metric::kPtf: return "PTF";
    case Metric::kCdu: return "CDU";
    case Metric::kSynTtr: return "SynTTR";
    case Metric::kBleu: return "BLEU";
  }
  return "";
}

void require_file(const fs::path& p, const std::string& flag) {
  if (p.empty()) throw ConfigError(flag + " is required");
  if (!fs::is_regular_file(p)) throw ConfigError(flag + ": no such file " + p.string());
}

void require_out(const RunConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("--out is required");
}

std::string join_paths(const std::vector<fs::path>& paths) {
  std::string s;
  for (const auto& p : paths) s += (s.empty() ? "" : ";") + p.string();
  return s;
}

std::map<std::string, std::string> base_config(const RunConfig& cfg) {
  std::map<std::string, std::string> c;
  c["seed"] = std::to_string(cfg.seed);
  c["workers"] = std::to_string(cfg.workers);
  c["mtld_threshold"] = fixed(cfg.mtld_threshold);
  if (!cfg.manifest.empty()) c["manifest"] = cfg.manifest.string();
  return c;
}

// Runs `body` inside a stage; on failure the partial outputs are quarantined.
template <typename Body>
void staged(const RunConfig& cfg, const std::string& command, std::map<std::string, std::string> config,
            std::ostream& log, Body body) {
  OutputStage stage(cfg.out, command);
  stage.set_config(std::move(config));
  try {
    body(stage);
  } catch (...) {
    const auto where = stage.quarantine();
    log << "partial outputs moved to " << where.string() << '\n';
    throw;
  }
  const auto files = stage.commit();
  log << command << ": wrote " << files.size() << " file(s) to " << cfg.out.string() << '\n';
}

std::vector<std::string> non_blank_lines(const fs::path& p) {
  std::vector<std::string> out;
  for (auto& l : read_lines(p)) {
    if (l.find_first_not_of(" \t") != std::string::npos) out.push_back(std::move(l));
  }
  return out;
}

std::string eval_csv(const EvalReport& r) {
  std::ostringstream o;
  o << "accuracy,precision,recall,f1,tp,fp,fn,tn\n"
    << fixed(r.accuracy) << ',' << fixed(r.precision) << ',' << fixed(r.recall) << ',' << fixed(r.f1) << ','
    << r.tp << ',' << r.fp << ',' << r.fn << ',' << r.tn << '\n';
  return o.str();
}

std::vector<LabeledSentence> labeled(const RunConfig& cfg) {
  std::vector<LabeledSentence> data;
  for (auto& s : non_blank_lines(cfg.eval_positives)) data.push_back({std::move(s), true});
  for (auto& s : non_blank_lines(cfg.eval_negatives)) data.push_back({std::move(s), false});
  return data;
}

SystemTable load_metric_table(const fs::path& p, std::string name) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  return parse_metric_table(in, std::move(name), p.string());
}

std::map<std::string, std::string> scorer_config(const RunConfig& cfg) {
  auto c = base_config(cfg);
  c["positives"] = cfg.positives.string();
  c["negatives"] = cfg.negatives.string();
  c["epochs"] = std::to_string(cfg.scorer.epochs);
  c["learning_rate"] = fixed(cfg.scorer.learning_rate);
  c["batch_size"] = std::to_string(cfg.scorer.batch_size);
  c["dim_log2"] = std::to_string(cfg.scorer.dim_log2);
  return c;
}

}  // namespace

void cmd_analyze(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.manifest, "--manifest");
  require_out(cfg);
  const auto books = load_manifest(cfg.manifest);
  if (books.empty()) throw InputError("manifest " + cfg.manifest.string() + " lists no books");

  staged(cfg, "analyze", base_config(cfg), log, [&](OutputStage& stage) {
    const auto profiles = profile_books(books, cfg.mtld_threshold, cfg.workers);
    std::ostringstream csv;
    write_profiles_csv(csv, profiles);
    stage.write("diversity.csv", csv.str());

    for (const auto& metric : kGeneralMetrics) {
      std::vector<StripGroup> groups;
      for (BookRole role : {BookRole::kSource, BookRole::kHumanTranslation, BookRole::kMachineTranslation}) {
        StripGroup g{std::string(to_string(role)), {}};
        for (std::size_t i = 0; i < books.size(); ++i) {
          if (books[i].role != role) continue;
          if (const auto v = metric.get(profiles[i])) g.points.push_back({books[i].id, *v});
        }
        if (!g.points.empty()) groups.push_back(std::move(g));
      }
      stage.write(std::string("chart_") + metric.key + ".svg",
                  strip_chart(std::string("Range and spread of ") + metric.label, metric.label, groups));
    }
  });
}

void cmd_correlate(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.manifest, "--manifest");
  require_out(cfg);
  const auto books = load_manifest(cfg.manifest);
  const auto pairs = pair_source_and_human(books);
  if (pairs.size() < 3) {
    throw InputError("correlation needs at least 3 source/human-translation pairs, got " +
                     std::to_string(pairs.size()));
  }

  staged(cfg, "correlate", base_config(cfg), log, [&](OutputStage& stage) {
    std::vector<BookRef> flat;
    for (const auto& p : pairs) {
      flat.push_back(p.human);
      flat.push_back(p.source);
    }
    const auto profiles = profile_books(flat, cfg.mtld_threshold, cfg.workers);
    std::ostringstream corr;
    corr << "metric,r,p_value,n\n";
    for (const auto& metric : kGeneralMetrics) {
      std::vector<double> x, y;
      std::ostringstream scatter;
      scatter << "title,ht_book_id,source_book_id,x_ht,y_source\n";
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& ht = profiles[2 * i];
        const auto& src = profiles[2 * i + 1];
        const auto hv = metric.get(ht);
        const auto sv = metric.get(src);
        if (!hv || !sv) {
          throw InputError(std::string(metric.label) + " undefined for book '" + (hv ? src.book_id : ht.book_id) + "'");
        }
        x.push_back(*hv);
        y.push_back(*sv);
        scatter << csv_field(pairs[i].source.title) << ',' << csv_field(ht.book_id) << ','
                << csv_field(src.book_id) << ',' << fixed(*hv) << ',' << fixed(*sv) << '\n';
      }
      const auto r = pearson(x, y);
      corr << metric.key << ',' << fixed(r.r) << ',' << scientific(r.p_value) << ',' << r.n << '\n';
      stage.write(std::string("scatter_") + metric.key + ".csv", scatter.str());
    }
    stage.write("correlation.csv", corr.str());
  });
}

void cmd_sfa(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.manifest, "--manifest");
  require_file(cfg.dict, "--dict");
  require_file(cfg.lemmas, "--lemmas");
  require_out(cfg);
  const auto books = load_manifest(cfg.manifest);
  auto config = base_config(cfg);
  config["dict"] = cfg.dict.string();
  config["lemmas"] = cfg.lemmas.string();

  staged(cfg, "sfa", config, log, [&](OutputStage& stage) {
    const auto dict = load_dictionary(cfg.dict);
    const auto lemmas = load_lemmas(cfg.lemmas);
    std::vector<BookRef> targets;
    for (const auto& b : books) {
      if (b.role != BookRole::kSource) targets.push_back(b);
    }
    if (targets.empty()) throw InputError("manifest lists no translated books");

    struct Result {
      SynonymTable table;
      std::optional<SfaScores> scores;
      std::string source_id;
    };
    const auto results = parallel_map(targets.size(), cfg.workers, [&](std::size_t i) {
      const BookRef& source = source_for(targets[i], books);
      std::vector<LemmaAnnotation> anns;
      for (const auto& a : lemmas) {
        if (a.book_id == source.id) anns.push_back(a);
      }
      const auto source_lines = read_lines(source.path);
      Result r;
      r.source_id = source.id;
      r.table = count_options(anns, load_book(targets[i]), dict, source_lines);
      try {
        r.scores = score_table(r.table);
      } catch (const UndefinedMetric&) {
      }
      return r;
    });

    std::ostringstream csv;
    csv << "book_id,source_id,ptf,cdu,syn_ttr,n_relevant_words\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& r = results[i];
      csv << csv_field(targets[i].id) << ',' << csv_field(r.source_id) << ',';
      if (r.scores) {
        csv << fixed(r.scores->ptf) << ',' << fixed(r.scores->cdu) << ',' << fixed(r.scores->syn_ttr) << ','
            << r.scores->n_relevant_words << '\n';
      } else {
        csv << ",,,0\n";
        log << "warning: book '" << targets[i].id << "' has no relevant synonym rows; SFA scores left empty\n";
      }
      std::ostringstream table;
      write_synonym_table_csv(table, r.table);
      stage.write("synonyms/" + safe_file_name(targets[i].id) + ".csv", table.str());
    }
    stage.write("sfa.csv", csv.str());
  });
}

void cmd_train_scorer(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.positives, "--positives");
  require_file(cfg.negatives, "--negatives");
  if (!cfg.eval_positives.empty() || !cfg.eval_negatives.empty()) {
    require_file(cfg.eval_positives, "--eval-positives");
    require_file(cfg.eval_negatives, "--eval-negatives");
  }
  require_out(cfg);
  ScorerConfig sc = cfg.scorer;
  sc.seed = cfg.seed;
  validate(sc);

  staged(cfg, "train-scorer", scorer_config(cfg), log, [&](OutputStage& stage) {
    const auto pos = non_blank_lines(cfg.positives);
    const auto neg = non_blank_lines(cfg.negatives);
    const auto model = train(pos, neg, sc);
    stage.write("model.json", model_to_json(model));
    std::ostringstream hist;
    hist << "epoch,loss\n";
    for (std::size_t e = 0; e < model.loss_history.size(); ++e) hist << e << ',' << fixed(model.loss_history[e]) << '\n';
    stage.write("training_log.csv", hist.str());
    log << "trained on " << pos.size() << " positive / " << neg.size() << " negative sentences, final loss "
        << fixed(model.loss_history.back()) << '\n';
    if (!cfg.eval_positives.empty()) {
      const auto report = evaluate(model, labeled(cfg));
      stage.write("eval.csv", eval_csv(report));
      log << "held-out accuracy " << fixed(report.accuracy, 4) << '\n';
    }
  });
}

void cmd_score(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.model, "--model");
  if (cfg.candidates.empty() && cfg.eval_positives.empty()) {
    throw ConfigError("score needs --candidates and/or --eval-positives/--eval-negatives");
  }
  for (const auto& c : cfg.candidates) require_file(c, "--candidates");
  if (!cfg.eval_positives.empty() || !cfg.eval_negatives.empty()) {
    require_file(cfg.eval_positives, "--eval-positives");
    require_file(cfg.eval_negatives, "--eval-negatives");
  }
  require_out(cfg);
  auto config = base_config(cfg);
  config["model"] = cfg.model.string();
  config["candidates"] = join_paths(cfg.candidates);

  staged(cfg, "score", config, log, [&](OutputStage& stage) {
    const auto model = load_model(cfg.model);
    if (!cfg.candidates.empty()) {
      std::vector<CandidateSet> sets;
      for (const auto& path : cfg.candidates) {
        for (auto& cs : load_candidates(path)) sets.push_back(std::move(cs));
      }
      const auto probs = parallel_map(sets.size(), cfg.workers, [&](std::size_t i) {
        std::vector<double> p;
        for (const auto& c : sets[i].candidates) p.push_back(predict_proba(model, c.text));
        return p;
      });
      ScoreMap scores;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t k = 0; k < probs[i].size(); ++k) {
          if (!scores.emplace(ScoreKey{sets[i].book_id, sets[i].sent_id, k}, probs[i][k]).second) {
            throw InputError("duplicate candidate set (" + sets[i].book_id + ", " + std::to_string(sets[i].sent_id) + ")");
          }
        }
      }
      std::ostringstream tsv;
      write_scores(tsv, scores);
      stage.write("scores.tsv", tsv.str());
    }
    if (!cfg.eval_positives.empty()) stage.write("eval.csv", eval_csv(evaluate(model, labeled(cfg))));
  });
}

void cmd_rerank(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.manifest, "--manifest");
  if (cfg.candidates.empty()) throw ConfigError("--candidates is required");
  for (const auto& c : cfg.candidates) require_file(c, "--candidates");
  if (cfg.scores.empty() && cfg.model.empty()) throw ConfigError("rerank needs --scores or --model");
  if (!cfg.scores.empty() && !cfg.model.empty()) throw ConfigError("--scores and --model are mutually exclusive");
  if (!cfg.scores.empty()) require_file(cfg.scores, "--scores");
  if (!cfg.model.empty()) require_file(cfg.model, "--model");
  if (cfg.n < 1) throw ConfigError("--n must be >= 1");
  require_out(cfg);

  auto config = base_config(cfg);
  config["candidates"] = join_paths(cfg.candidates);
  config["n"] = std::to_string(cfg.n);
  config["rank_sweep"] = cfg.rank_sweep ? "true" : "false";
  config[cfg.scores.empty() ? "model" : "scores"] = (cfg.scores.empty() ? cfg.model : cfg.scores).string();

  staged(cfg, "rerank", config, log, [&](OutputStage& stage) {
    const auto books = load_manifest(cfg.manifest);
    const auto sources = books_with_role(books, BookRole::kSource);
    if (sources.size() < cfg.n) {
      throw InputError("manifest has " + std::to_string(sources.size()) + " source books, fewer than --n " +
                       std::to_string(cfg.n));
    }
    const auto profiles = profile_books(sources, cfg.mtld_threshold, cfg.workers);
    const auto lexdiv = lexdiv_scores(profiles);
    const auto assignments = assign_bins(lexdiv, cfg.n);

    std::vector<CandidateSet> all;
    for (const auto& path : cfg.candidates) {
      for (auto& cs : load_candidates(path)) all.push_back(std::move(cs));
    }
    auto grouped = group_by_book(std::move(all));
    std::set<std::string> known;
    for (const auto& s : sources) known.insert(s.id);
    for (const auto& [id, _] : grouped) {
      if (!known.count(id)) throw InputError("candidates reference book '" + id + "', not a source book in the manifest");
    }
    for (const auto& a : assignments) {
      if (!grouped.count(a.book_id)) throw InputError("no candidates for book '" + a.book_id + "'");
    }

    ScoreMap score_map;
    ScorerModel model;
    std::unique_ptr<OriginalityScorer> scorer;
    if (!cfg.scores.empty()) {
      score_map = load_scores(cfg.scores);
      scorer = std::make_unique<ScoreTableScorer>(score_map);
    } else {
      model = load_model(cfg.model);
      scorer = std::make_unique<ModelScorer>(model);
    }

    const auto scored = parallel_map(assignments.size(), cfg.workers, [&](std::size_t i) {
      return score_book(assignments[i].book_id, grouped.at(assignments[i].book_id), scorer.get());
    });

    for (std::size_t i = 0; i < assignments.size(); ++i) {
      const auto book = select_book(scored[i], assignments[i].selected_rank);
      for (const auto& w : book.warnings) log << "warning: " << w << '\n';
      const std::string stem = "books/" + safe_file_name(book.book_id);
      std::ostringstream doc, choices;
      write_document(doc, book);
      write_choices_csv(choices, book);
      stage.write(stem + ".txt", doc.str());
      stage.write(stem + ".choices.csv", choices.str());
    }

    std::ostringstream prof, norm, assign;
    write_profiles_csv(prof, profiles);
    norm << "book_id,normalized_ttr,normalized_yules_i,normalized_mtld,lexdiv\n";
    for (const auto& s : lexdiv) {
      norm << csv_field(s.book_id) << ',' << fixed(s.normalized_ttr) << ',' << fixed(s.normalized_yules_i) << ','
           << fixed(s.normalized_mtld) << ',' << fixed(s.lexdiv) << '\n';
    }
    write_assignments_csv(assign, assignments);
    stage.write("profiles.csv", prof.str());
    stage.write("lexdiv.csv", norm.str());
    stage.write("assignments.csv", assign.str());

    if (cfg.rank_sweep) {
      struct SweepRow {
        std::size_t rank;
        double mean_p;
        DiversityProfile profile;
      };
      const auto sweeps = parallel_map(assignments.size(), cfg.workers, [&](std::size_t i) {
        std::vector<SweepRow> rows;
        for (std::size_t r = 1; r <= cfg.n; ++r) {
          const auto book = select_book(scored[i], r);
          std::vector<std::string> tokens;
          for (const auto& line : book.lines) {
            for (auto& t : tokenize_for_metrics(line)) tokens.push_back(std::move(t));
          }
          rows.push_back({r, book.mean_selected_probability(), profile_tokens(book.book_id, tokens, cfg.mtld_threshold)});
        }
        return rows;
      });
      std::ostringstream sweep;
      sweep << "book_id,rank,mean_p_original,ttr,yules_i,mtld\n";
      for (std::size_t i = 0; i < assignments.size(); ++i) {
        for (const auto& row : sweeps[i]) {
          sweep << csv_field(assignments[i].book_id) << ',' << row.rank << ',' << fixed(row.mean_p) << ','
                << fixed(row.profile.ttr) << ',' << fixed(row.profile.yules_i) << ',' << fixed(row.profile.mtld)
                << '\n';
        }
      }
      stage.write("rank_sweep.csv", sweep.str());
    }
  });
}

void cmd_report(const RunConfig& cfg, std::ostream& log) {
  for (const auto& [name, path] : cfg.systems) {
    if (name.empty()) throw ConfigError("--system needs NAME=PATH");
    require_file(path, "--system " + name);
  }
  if (!cfg.ht.empty()) require_file(cfg.ht, "--ht");
  if (!cfg.vanilla.empty()) require_file(cfg.vanilla, "--vanilla");
  if (!cfg.sweep.empty()) require_file(cfg.sweep, "--sweep");
  const std::size_t n_sets = cfg.systems.size() + !cfg.ht.empty() + !cfg.vanilla.empty();
  if (n_sets < 2) throw ConfigError("report needs at least 2 system output sets (--system/--ht/--vanilla)");
  if (cfg.systems.empty()) throw ConfigError("report needs at least one --system");
  require_out(cfg);

  auto config = base_config(cfg);
  for (const auto& [name, path] : cfg.systems) config["system." + name] = path.string();
  if (!cfg.ht.empty()) config["ht"] = cfg.ht.string();
  if (!cfg.vanilla.empty()) config["vanilla"] = cfg.vanilla.string();
  if (!cfg.sweep.empty()) config["sweep"] = cfg.sweep.string();

  staged(cfg, "report", config, log, [&](OutputStage& stage) {
    std::vector<SystemTable> systems;
    for (const auto& [name, path] : cfg.systems) systems.push_back(load_metric_table(path, name));
    std::vector<SystemTable> refs;
    if (!cfg.ht.empty()) refs.push_back(load_metric_table(cfg.ht, "HT"));
    else log << "warning: no --ht reference given; charts omit the HT line\n";
    if (!cfg.vanilla.empty()) refs.push_back(load_metric_table(cfg.vanilla, "vanilla MT"));

    std::vector<SystemTable> all = systems;
    all.insert(all.end(), refs.begin(), refs.end());
    const std::optional<std::string> reference =
        cfg.ht.empty() ? std::nullopt : std::optional<std::string>("HT");
    const auto summary = summarize(all, reference);  // throws on mismatched book sets
    std::ostringstream sum;
    write_summary_csv(sum, summary);
    stage.write("summary.csv", sum.str());

    std::vector<std::string> categories;
    for (const auto& [book, _] : systems.front().books) categories.push_back(book);
    for (Metric m : kAllMetrics) {
      auto series_of = [&](const SystemTable& t) {
        BarSeries s{t.system, {}};
        for (const auto& book : categories) {
          const auto& values = t.books.at(book);
          const auto it = values.find(m);
          s.values.push_back(it == values.end() ? std::nullopt : std::optional<double>(it->second));
        }
        return s;
      };
      std::vector<BarSeries> bars, lines;
      bool any = false;
      for (const auto& t : systems) {
        bars.push_back(series_of(t));
        for (const auto& v : bars.back().values) any = any || v.has_value();
      }
      if (!any) continue;
      for (const auto& t : refs) lines.push_back(series_of(t));
      stage.write("report_" + std::string(to_string(m)) + ".svg",
                  grouped_bar_chart("Per-book comparison of " + metric_label(m), metric_label(m), categories, bars,
                                    lines));
    }

    if (!cfg.sweep.empty()) {
      std::ifstream in(cfg.sweep, std::ios::binary);
      std::string line;
      std::getline(in, line);
      const auto header = parse_csv_record(line);
      const std::vector<std::string> expected{"book_id", "rank", "mean_p_original", "ttr", "yules_i", "mtld"};
      if (header != expected) throw ParseError(cfg.sweep.string(), 1, "not a rank_sweep.csv file");
      std::map<std::string, std::vector<std::vector<std::string>>> by_book;
      std::size_t lineno = 1;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = parse_csv_record(line);
        if (f.size() != expected.size()) throw ParseError(cfg.sweep.string(), lineno, "expected 6 fields");
        by_book[f[0]].push_back(std::move(f));
      }
      const char* labels[] = {"mean original-text probability", "TTR", "Yule's I", "MTLD"};
      const char* keys[] = {"mean_p_original", "ttr", "yules_i", "mtld"};
      for (std::size_t col = 2; col < expected.size(); ++col) {
        std::vector<LineSeries> series;
        for (const auto& [book, rows] : by_book) {
          LineSeries s{book, {}};
          for (const auto& f : rows) {
            if (f[col].empty()) continue;
            s.points.emplace_back(std::stod(f[1]), std::stod(f[col]));
          }
          series.push_back(std::move(s));
        }
        stage.write(std::string("sweep_") + keys[col - 2] + ".svg",
                    line_chart(std::string(labels[col - 2]) + " by original-text rank", "rank", labels[col - 2],
                               series));
      }
    }
  });
}

void cmd_bleu(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.hyp, "--hyp");
  require_file(cfg.ref, "--ref");
  require_out(cfg);
  auto config = base_config(cfg);
  config["hyp"] = cfg.hyp.string();
  config["ref"] = cfg.ref.string();
  staged(cfg, "bleu", config, log, [&](OutputStage& stage) {
    const auto r = corpus_bleu(read_lines(cfg.hyp), read_lines(cfg.ref));
    std::ostringstream o;
    o << "bleu,p1,p2,p3,p4,brevity_penalty,hyp_len,ref_len\n"
      << fixed(r.score) << ',' << fixed(r.precisions[0]) << ',' << fixed(r.precisions[1]) << ','
      << fixed(r.precisions[2]) << ',' << fixed(r.precisions[3]) << ',' << fixed(r.brevity_penalty) << ','
      << r.hyp_len << ',' << r.ref_len << '\n';
    stage.write("bleu.csv", o.str());
    log << "BLEU = " << fixed(r.score, 2) << '\n';
  });
}

}  // namespace lexdiv::app
