#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "lexdiv/bleu.hpp"
#include "lexdiv/corpus.hpp"
#include "lexdiv/error.hpp"

using namespace lexdiv;

namespace {

const std::string kData = std::string(LEXDIV_TEST_DATA) + "/bleu/";

std::vector<std::string> lines_of(const std::string& name) {
  std::ifstream in(kData + name);
  REQUIRE(in);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

using Case = std::pair<std::vector<std::string>, std::vector<std::string>>;

Case golden_case(const std::string& name) {
  const auto hyp = lines_of("hyp.txt"), ref = lines_of("ref.txt");
  if (name == "corpus") return {hyp, ref};
  if (name == "first5") return {{hyp.begin(), hyp.begin() + 5}, {ref.begin(), ref.begin() + 5}};
  if (name == "short_hyp") return {{"the cat"}, {"the cat sat on the mat"}};
  if (name == "cat_mat") return {{"the cat sat on the mat"}, {"the cat is on the mat"}};
  if (name == "no_overlap") return {{"Dit is een zin zonder enige overeenkomst."}, {"Volkomen andere woorden staan hier!"}};
  if (name == "case") return {{"The Cat Sat On The Mat"}, {"the cat sat on the mat"}};
  FAIL("unknown golden case " << name);
  return {};
}

}  // namespace

TEST_CASE("13a tokenization matches the reference tokenizer") {
  const auto hyp = lines_of("hyp.txt"), ref = lines_of("ref.txt");
  const auto expected = lines_of("tokenized_13a.txt");
  REQUIRE(expected.size() == hyp.size() + ref.size());
  for (std::size_t i = 0; i < hyp.size(); ++i) CHECK(tokenize_13a(hyp[i]) == expected[i]);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(tokenize_13a(ref[i]) == expected[hyp.size() + i]);
  CHECK(tokenize_13a("  a&amp;b  ") == "a & b");
  CHECK(tokenize_13a("") == "");
}

TEST_CASE("golden scores from the reference scorer") {
  const auto rows = lines_of("golden.tsv");
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i], '\t');
    REQUIRE(f.size() == 9);
    CAPTURE(f[0]);
    const auto [h, r] = golden_case(f[0]);
    const auto res = corpus_bleu(h, r);
    CHECK(std::abs(res.score - std::stod(f[1])) <= 1e-9);
    for (std::size_t k = 0; k < kBleuOrder; ++k) CHECK(std::abs(res.precisions[k] - std::stod(f[2 + k])) <= 1e-9);
    CHECK(std::abs(res.brevity_penalty - std::stod(f[6])) <= 1e-12);
    CHECK(res.hyp_len == std::stoull(f[7]));
    CHECK(res.ref_len == std::stoull(f[8]));
  }
}

TEST_CASE("BLEU properties") {
  const auto hyp = lines_of("hyp.txt"), ref = lines_of("ref.txt");
  CHECK(corpus_bleu(ref, ref).score == 100.0);
  CHECK(corpus_bleu(hyp, hyp).score == 100.0);

  const auto base = corpus_bleu(hyp, ref);
  std::mt19937 rng(6);
  std::vector<std::size_t> perm(hyp.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> h, r;
    for (auto i : perm) {
      h.push_back(hyp[i]);
      r.push_back(ref[i]);
    }
    const auto res = corpus_bleu(h, r);
    CHECK(res.score == base.score);
    CHECK(res.brevity_penalty == base.brevity_penalty);
  }

  // hypothesis at least as long as the reference: no brevity penalty
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    const std::vector<std::string> h{hyp[i] + " extra words here"}, r{ref[i]};
    const auto res = corpus_bleu(h, r);
    if (res.hyp_len >= res.ref_len) CHECK(res.brevity_penalty == 1.0);
    CHECK(res.brevity_penalty <= 1.0);
    CHECK(res.score >= 0.0);
    CHECK(res.score <= 100.0);
  }

  BleuStats a = sentence_stats(hyp[0], ref[0]), b = sentence_stats(hyp[1], ref[1]);
  a += b;
  const std::vector<std::string> h2{hyp[0], hyp[1]}, r2{ref[0], ref[1]};
  CHECK(bleu_from_stats(a).score == corpus_bleu(h2, r2).score);
}

TEST_CASE("BLEU errors") {
  const std::vector<std::string> one{"a"}, two{"a", "b"}, none;
  CHECK_THROWS_AS(corpus_bleu(one, two), InputError);
  CHECK_THROWS_AS(corpus_bleu(none, none), InputError);
}
