// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "../fixture.hpp"
#include "../oracles.hpp"
#include "../synth.hpp"
#include "lexdiv/app/commands.hpp"
#include "lexdiv/bleu.hpp"
#include "lexdiv/corpus.hpp"
#include "lexdiv/diversity.hpp"
#include "lexdiv/error.hpp"
#include "lexdiv/evalstats.hpp"
#include "lexdiv/format.hpp"
#include "lexdiv/rerank.hpp"
#include "lexdiv/scoring.hpp"
#include "lexdiv/sfa.hpp"
#include "lexdiv/tailoring.hpp"

using namespace lexdiv;
namespace fs = std::filesystem;

namespace {

// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(count_) + " checks";
    std::string s = std::to_string(failed_) + "/" + std::to_string(count_) + " failed";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

template <typename Fn>
bool throws_undefined(Fn fn) {
  try {
    fn();
  } catch (const UndefinedMetric&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : fixture::lines(p)) rows.push_back(parse_csv_record(line));
  return rows;
}

std::vector<std::string> tokens_of_file(const fs::path& p) {
  std::vector<std::string> tokens;
  for (const auto& line : read_lines(p)) {
    for (auto& t : tokenize_for_metrics(line)) tokens.push_back(std::move(t));
  }
  return tokens;
}

void metric_oracles(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const auto tokens = oracle::random_tokens(rng, 50, 10);
    const std::string tag = "trial " + std::to_string(trial);
    c.expect(std::abs(ttr(tokens) - *oracle::ttr(tokens)) <= 1e-9, tag + " ttr");
    const auto oy = oracle::yules_i(tokens);
    if (oy) c.expect(std::abs(yules_i(tokens) - *oy) <= 1e-9, tag + " yules_i");
    else c.expect(throws_undefined([&] { yules_i(tokens); }), tag + " yules_i flag");
    const auto om = oracle::mtld(tokens);
    if (om) c.expect(std::abs(mtld(tokens) - *om) <= 1e-9, tag + " mtld");
    else c.expect(throws_undefined([&] { mtld(tokens); }), tag + " mtld flag");
    const auto p = profile_tokens("x", tokens);
    c.expect(p.yules_i.has_value() == oy.has_value() && p.mtld.has_value() == om.has_value(), tag + " profile flags");
  }
  const std::vector<std::string> none;
  c.expect(throws_undefined([&] { ttr(none); }), "empty ttr flag");
  c.expect(throws_undefined([&] { yules_i(none); }), "empty yules_i flag");
  c.expect(throws_undefined([&] { mtld(none); }), "empty mtld flag");
  const double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime " + num(secs) + " s");
}

void mtld_traces(Check& c) {
  const std::vector<std::string> cycle{"a", "b", "c", "d", "a", "b", "c", "d", "a", "b"};
  c.expect(mtld(cycle, 0.72) == 10.0, "cycle gives " + num(mtld(cycle, 0.72)));
  const std::vector<std::string> same(100, "a");
  c.expect(std::abs(mtld(same, 0.72) - 2.0) <= 0.1, "repeat gives " + num(mtld(same, 0.72)));
}

SynonymTable table_of(const oracle::Rows& rows) {
  SynonymTable t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SynonymRow r;
    r.lemma = "w" + std::to_string(i);
    r.pos = Pos::kNoun;
    for (std::size_t k = 0; k < rows[i].size(); ++k) r.options.push_back("o" + std::to_string(k));
    r.counts = rows[i];
    r.source_occurrences = 1;
    t.rows.push_back(std::move(r));
  }
  return t;
}

void sfa_oracles(Check& c) {
  std::mt19937 rng(200);
  std::uniform_int_distribution<int> n_rows(1, 10), n_opts(1, 6), count(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::Rows rows(static_cast<std::size_t>(n_rows(rng)));
    for (auto& r : rows) {
      r.resize(static_cast<std::size_t>(n_opts(rng)));
      for (auto& x : r) x = static_cast<std::uint64_t>(count(rng));
    }
    const auto t = table_of(rows);
    const std::string tag = "table " + std::to_string(trial);
    const auto optf = oracle::ptf(rows);
    if (!optf) {
      c.expect(throws_undefined([&] { score_table(t); }), tag + " undefined flag");
      continue;
    }
    const auto s = score_table(t);
    c.expect(std::abs(s.ptf - *optf) <= 1e-9, tag + " ptf");
    c.expect(std::abs(s.cdu - *oracle::cdu(rows)) <= 1e-9, tag + " cdu");
    c.expect(std::abs(s.syn_ttr - *oracle::syn_ttr(rows)) <= 1e-9, tag + " syn_ttr");
  }
  c.expect(std::abs(ptf(table_of({{5, 3, 2}})) - 0.5) <= 1e-4, "ptf [5,3,2]");
  c.expect(std::abs(cdu(table_of({{4, 0}})) - 0.2929) <= 1e-4, "cdu [4,0] = " + num(cdu(table_of({{4, 0}}))));
}

void binning(Check& c) {
  std::vector<LexDivScore> books;
  for (int i = 0; i < 31; ++i) books.push_back({"b" + std::to_string(100 + i), 0, 0, 0, (i * 7 % 31) / 31.0});
  const auto a = assign_bins(books, 5);
  std::vector<std::size_t> sizes(5, 0);
  for (const auto& x : a) ++sizes[x.bin_index - 1];
  c.expect(sizes == std::vector<std::size_t>{6, 6, 6, 6, 7}, "31 books into 5 bins");
  c.expect(bin_sizes(31, 5) == std::vector<std::size_t>{6, 6, 6, 6, 7}, "bin_sizes(31,5)");

  std::mt19937 rng(1000);
  std::uniform_int_distribution<int> coarse(0, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, count)(rng);
    std::vector<LexDivScore> s;
    for (std::size_t i = 0; i < count; ++i) s.push_back({"b" + std::to_string(i), 0, 0, 0, coarse(rng) / 20.0});
    const auto r = assign_bins(s, n);
    bool mono = true;
    for (const auto& x : r) {
      for (const auto& y : r) mono = mono && !(x.lexdiv > y.lexdiv && x.selected_rank > y.selected_rank);
    }
    c.expect(mono, "vector " + std::to_string(trial));
  }
}

void rank_monotonicity(Check& c, const fs::path& work) {
  std::mt19937_64 rng(55);
  const auto pos = synth::sentences(rng, 500, true), neg = synth::sentences(rng, 500, false);
  fixture::write_file(work / "pos.txt", [&] { std::string s; for (const auto& l : pos) s += l + "\n"; return s; }());
  fixture::write_file(work / "neg.txt", [&] { std::string s; for (const auto& l : neg) s += l + "\n"; return s; }());
  std::ostringstream log;
  app::RunConfig train;
  train.positives = work / "pos.txt";
  train.negatives = work / "neg.txt";
  train.out = work / "model";
  app::cmd_train_scorer(train, log);

  fixture::CorpusSpec spec;
  spec.books = 20;
  spec.lines = 12;
  spec.candidates = 20;
  spec.markers = true;
  const auto corpus = fixture::write_corpus(work / "corpus", spec);
  for (std::size_t n : {5u, 10u, 20u}) {
    app::RunConfig cfg;
    cfg.manifest = corpus.manifest;
    cfg.candidates = {corpus.candidates};
    cfg.model = train.out / "model.json";
    cfg.n = n;
    cfg.rank_sweep = true;
    cfg.workers = 4;
    cfg.out = work / ("rerank_" + std::to_string(n));
    app::cmd_rerank(cfg, log);
    std::map<std::string, std::vector<double>> means;
    const auto rows = csv_rows(cfg.out / "rank_sweep.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) means[rows[i][0]].push_back(std::stod(rows[i][2]));
    c.expect(means.size() == 20, "n=" + std::to_string(n) + " books in sweep");
    for (const auto& [book, m] : means) {
      c.expect(m.size() == n, "n=" + std::to_string(n) + " " + book + " ranks");
      bool mono = true;
      for (std::size_t r = 1; r < m.size(); ++r) mono = mono && m[r] <= m[r - 1];
      c.expect(mono, "n=" + std::to_string(n) + " " + book + " mean p not non-increasing");
      c.expect(m.front() > m.back(), "n=" + std::to_string(n) + " " + book + " flat sweep");
    }
  }
}

void tailored_reproduction(Check& c, const fs::path& work) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = fixture::write_corpus(work / "corpus", fixture::CorpusSpec{});
  app::RunConfig cfg;
  cfg.manifest = corpus.manifest;
  cfg.candidates = {corpus.candidates};
  cfg.scores = corpus.scores;
  cfg.n = 5;
  cfg.out = work / "out";
  std::ostringstream log;
  app::cmd_rerank(cfg, log);

  std::vector<std::pair<double, std::string>> lexdiv;
  for (const auto& row : csv_rows(cfg.out / "lexdiv.csv")) {
    if (row[0] != "book_id") lexdiv.emplace_back(std::stod(row[4]), row[0]);
  }
  std::sort(lexdiv.begin(), lexdiv.end());
  bool strict = lexdiv.size() == 5;
  for (std::size_t i = 1; i < lexdiv.size(); ++i) strict = strict && lexdiv[i].first > lexdiv[i - 1].first;
  c.expect(strict, "source LexDiv strictly ordered");

  std::map<std::string, std::size_t> rank;
  for (const auto& row : csv_rows(cfg.out / "assignments.csv")) {
    if (row[0] != "book_id") rank[row[0]] = std::stoul(row[3]);
  }
  c.expect(rank[lexdiv.front().second] == 5, "lowest LexDiv book gets rank " + std::to_string(rank[lexdiv.front().second]));
  c.expect(rank[lexdiv.back().second] == 1, "highest LexDiv book gets rank " + std::to_string(rank[lexdiv.back().second]));

  // output MTLD must fall as the selected rank rises
  std::vector<std::pair<std::size_t, double>> by_rank;
  for (const auto& [book, r] : rank) {
    by_rank.emplace_back(r, mtld(tokens_of_file(cfg.out / "books" / (book + ".txt"))));
  }
  std::sort(by_rank.begin(), by_rank.end());
  for (std::size_t i = 1; i < by_rank.size(); ++i) {
    c.expect(by_rank[i].second < by_rank[i - 1].second,
             "MTLD at rank " + std::to_string(by_rank[i].first) + " = " + num(by_rank[i].second) + " vs rank " +
                 std::to_string(by_rank[i - 1].first) + " = " + num(by_rank[i - 1].second));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 60.0, "runtime " + num(secs) + " s");
}

void scorer_accuracy(Check& c) {
  std::mt19937_64 rng(2000);
  const auto pos = synth::sentences(rng, 1000, true), neg = synth::sentences(rng, 1000, false);
  const std::vector<std::string> train_pos(pos.begin(), pos.begin() + 800), train_neg(neg.begin(), neg.begin() + 800);
  std::vector<LabeledSentence> held;
  for (std::size_t i = 800; i < 1000; ++i) {
    held.push_back({pos[i], true});
    held.push_back({neg[i], false});
  }
  const ScorerConfig config;
  c.expect(config.epochs <= 10, "default epochs " + std::to_string(config.epochs));
  const auto model = train(train_pos, train_neg, config);
  const auto r = evaluate(model, held);
  c.expect(r.accuracy >= 0.95, "held-out accuracy " + num(r.accuracy));

  const double tp = static_cast<double>(r.tp), fp = static_cast<double>(r.fp), fn = static_cast<double>(r.fn),
               tn = static_cast<double>(r.tn);
  c.expect(r.tp + r.fp + r.fn + r.tn == held.size(), "confusion counts cover the data");
  c.expect(r.accuracy == (tp + tn) / (tp + tn + fp + fn), "accuracy recomputes");
  const double p = tp + fp == 0 ? 0.0 : tp / (tp + fp);
  const double rec = tp + fn == 0 ? 0.0 : tp / (tp + fn);
  c.expect(r.precision == p, "precision recomputes");
  c.expect(r.recall == rec, "recall recomputes");
  c.expect(r.f1 == (p + rec == 0 ? 0.0 : 2 * p * rec / (p + rec)), "f1 recomputes");
  const auto hand = report_from_counts(2, 1, 1, 2);
  c.expect(std::abs(hand.f1 - 0.6667) <= 1e-4 && std::abs(hand.accuracy - 0.6667) <= 1e-4, "TP2 FP1 FN1 TN2");
}

void statistics(Check& c) {
  const std::vector<double> x{1, 2, 3}, y{2, 4, 6}, z{3, 2, 4};
  c.expect(std::abs(pearson(x, y).r - 1.0) <= 1e-12, "r([1,2,3],[2,4,6]) = " + num(pearson(x, y).r));
  c.expect(std::abs(pearson(x, z).r - 0.5) <= 1e-9, "r([1,2,3],[3,2,4]) = " + num(pearson(x, z).r));
  const double p = correlation_p_value(0.971, 31);
  c.expect(p < 1e-5, "p(r=0.971, n=31) = " + num(p));
}

void bleu(Check& c) {
  const std::string dir = std::string(LEXDIV_TEST_DATA) + "/bleu/";
  const auto hyp = read_lines(dir + "hyp.txt"), ref = read_lines(dir + "ref.txt");
  c.expect(corpus_bleu(hyp, hyp).score == 100.0, "bleu(h,h) = " + num(corpus_bleu(hyp, hyp).score));
  c.expect(corpus_bleu(ref, ref).score == 100.0, "bleu(r,r)");
  const auto golden = fixture::lines(dir + "golden.tsv");
  std::size_t checked = 0;
  for (const auto& line : golden) {
    const auto f = split(line, '\t');
    std::vector<std::string> h, r;
    if (f[0] == "corpus") {
      h = hyp;
      r = ref;
    } else if (f[0] == "first5") {
      h.assign(hyp.begin(), hyp.begin() + 5);
      r.assign(ref.begin(), ref.begin() + 5);
    } else if (f[0] == "cat_mat") {
      h = {"the cat sat on the mat"};
      r = {"the cat is on the mat"};
    } else {
      continue;
    }
    const double got = corpus_bleu(h, r).score;
    c.expect(std::abs(got - std::stod(f[1])) <= 0.01, f[0] + ": " + num(got) + " vs " + f[1]);
    ++checked;
  }
  c.expect(checked == 3, "golden rows found");
}

void run_pipeline(const fs::path& out, const fixture::CorpusFiles& corpus, const fs::path& inputs) {
  std::ostringstream log;
  app::RunConfig cfg;
  cfg.manifest = corpus.manifest;
  cfg.seed = 9;
  cfg.workers = 4;

  cfg.out = out / "analyze";
  app::cmd_analyze(cfg, log);
  cfg.out = out / "correlate";
  app::cmd_correlate(cfg, log);

  app::RunConfig sfa = cfg;
  sfa.manifest = inputs / "sfa_manifest.tsv";
  sfa.dict = inputs / "dict.tsv";
  sfa.lemmas = inputs / "lemmas.txt";
  sfa.out = out / "sfa";
  app::cmd_sfa(sfa, log);

  app::RunConfig tr = cfg;
  tr.positives = inputs / "pos.txt";
  tr.negatives = inputs / "neg.txt";
  tr.eval_positives = inputs / "pos.txt";
  tr.eval_negatives = inputs / "neg.txt";
  tr.out = out / "model";
  app::cmd_train_scorer(tr, log);

  app::RunConfig sc = cfg;
  sc.model = tr.out / "model.json";
  sc.candidates = {corpus.candidates};
  sc.out = out / "score";
  app::cmd_score(sc, log);

  app::RunConfig rr = cfg;
  rr.candidates = {corpus.candidates};
  rr.scores = sc.out / "scores.tsv";
  rr.rank_sweep = true;
  rr.out = out / "rerank";
  app::cmd_rerank(rr, log);

  app::RunConfig rp = cfg;
  rp.systems = {{"tailored", rr.out / "profiles.csv"}};
  rp.ht = rr.out / "profiles.csv";
  rp.sweep = rr.out / "rank_sweep.csv";
  rp.out = out / "report";
  app::cmd_report(rp, log);

  app::RunConfig bl = cfg;
  bl.hyp = rr.out / "books" / "s00.txt";
  bl.ref = rr.out / "books" / "s00.txt";
  bl.out = out / "bleu";
  app::cmd_bleu(bl, log);
}

void determinism(Check& c, const fs::path& work) {
  const auto corpus = fixture::write_corpus(work / "corpus", fixture::CorpusSpec{});
  const auto inputs = work / "inputs";
  fixture::write_file(inputs / "src.txt", "The quiet cat\nA touching story\n");
  fixture::write_file(inputs / "mt.txt", "Stil, stil kat\nEen aangrijpend verhaal\n");
  fixture::write_file(inputs / "sfa_manifest.tsv", "id\ttitle\trole\tlanguage\tpath\nsrc\tT\tsource\ten\tsrc.txt\n"
                                                    "mt\tT\tmachine_translation\tnl\tmt.txt\n");
  fixture::write_file(inputs / "dict.tsv", "quiet\tADJ\tstil,rustig\ntouching\tADJ\tontroerend,aangrijpend\n");
  fixture::write_file(inputs / "lemmas.txt", "# src 0\nThe\tthe\tOTHER\nquiet\tquiet\tADJ\ncat\tcat\tNOUN\n"
                                              "# src 1\nA\ta\tOTHER\ntouching\ttouching\tADJ\nstory\tstory\tNOUN\n");
  std::mt19937_64 rng(10);
  std::string pos, neg;
  for (const auto& s : synth::sentences(rng, 200, true)) pos += s + "\n";
  for (const auto& s : synth::sentences(rng, 200, false)) neg += s + "\n";
  fixture::write_file(inputs / "pos.txt", pos);
  fixture::write_file(inputs / "neg.txt", neg);

  run_pipeline(work / "run", corpus, inputs);
  fs::rename(work / "run", work / "run1");
  run_pipeline(work / "run", corpus, inputs);
  fs::rename(work / "run", work / "run2");

  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(work / "run1")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), work / "run1");
    const auto other = work / "run2" / rel;
    c.expect(fs::exists(other) && fixture::slurp(entry.path()) == fixture::slurp(other), rel.string() + " differs");
    ++compared;
  }
  std::size_t total2 = 0;
  for (const auto& entry : fs::recursive_directory_iterator(work / "run2")) total2 += entry.is_regular_file();
  c.expect(compared == total2, "file sets differ");
  c.expect(compared >= 30, "only " + std::to_string(compared) + " files compared");
}

}  // namespace

int main() {
  const fs::path work = fixture::temp_dir("acceptance");
  fs::remove_all(work);
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "metric oracle equivalence", metric_oracles},
      {2, "MTLD hand traces", mtld_traces},
      {3, "SFA oracle equivalence", sfa_oracles},
      {4, "binning sizes and monotonicity", binning},
      {5, "rank/score monotonicity", [&](Check& c) { rank_monotonicity(c, work / "c5"); }},
      {6, "tailored reranking reproduction", [&](Check& c) { tailored_reproduction(c, work / "c6"); }},
      {7, "scorer accuracy and report consistency", scorer_accuracy},
      {8, "correlation statistics", statistics},
      {9, "BLEU", bleu},
      {10, "pipeline determinism", [&](Check& c) { determinism(c, work / "c10"); }},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %2d  %-40s %s (%.2f s)\n", c.ok() ? "PASS" : "FAIL", crit.id, crit.name, c.summary().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !c.ok();
  }
  fs::remove_all(work);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
