#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lexdiv/corpus.hpp"
#include "lexdiv/error.hpp"
#include "lexdiv/evalstats.hpp"
#include "lexdiv/format.hpp"

using namespace lexdiv;

namespace {

const std::string kData = std::string(LEXDIV_TEST_DATA) + "/evalstats/";

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) rows.push_back(split(line, '\t'));
  return rows;
}

std::vector<double> numbers(const std::string& csv) {
  std::vector<double> out;
  for (const auto& f : split(csv, ',')) out.push_back(std::stod(f));
  return out;
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

SystemTable table(std::string name, std::map<std::string, std::map<Metric, double>> books) {
  return SystemTable{std::move(name), std::move(books)};
}

}  // namespace

TEST_CASE("pearson worked examples") {
  const std::vector<double> x{1, 2, 3}, y{2, 4, 6}, z{3, 2, 4};
  CHECK(pearson(x, y).r == doctest::Approx(1.0));
  CHECK(pearson(x, y).p_value == 0.0);
  CHECK(pearson(x, z).r == doctest::Approx(0.5));
  CHECK(pearson(x, z).n == 3);

  const std::vector<double> flat{2, 2, 2}, two{1, 2};
  CHECK_THROWS_AS(pearson(x, flat), UndefinedMetric);
  CHECK_THROWS_AS(pearson(flat, x), UndefinedMetric);
  CHECK_THROWS_AS(pearson(x, two), InputError);
  CHECK_THROWS_AS(pearson(two, two), InputError);
}

TEST_CASE("pearson matches frozen reference values") {
  for (const auto& row : read_tsv(kData + "pearson.tsv")) {
    CAPTURE(row[0]);
    const auto res = pearson(numbers(row[1]), numbers(row[2]));
    CHECK(std::abs(res.r - std::stod(row[3])) <= 1e-12);
    CHECK(rel_close(res.p_value, std::stod(row[4]), 1e-9));
  }
  for (const auto& row : read_tsv(kData + "pvalues.tsv")) {
    CAPTURE(row[0]);
    const double p = correlation_p_value(std::stod(row[0]), std::stoul(row[1]));
    CHECK(rel_close(p, std::stod(row[2]), 1e-6));
  }
  CHECK(correlation_p_value(0.971, 31) < 1e-5);
  CHECK(correlation_p_value(0.0, 10) == doctest::Approx(1.0));
  CHECK(correlation_p_value(-1.0, 10) == 0.0);
}

TEST_CASE("pearson properties") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 40)(rng);
    std::vector<double> x(n), y(n), up(n), down(n);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    double a = u(rng);
    if (std::abs(a) < 0.01) a = 1.0;
    const double b = u(rng);
    for (std::size_t i = 0; i < n; ++i) {
      up[i] = std::abs(a) * x[i] + b;
      down[i] = -std::abs(a) * x[i] + b;
    }
    CHECK(std::abs(pearson(x, up).r - 1.0) <= 1e-12);
    CHECK(std::abs(pearson(x, down).r + 1.0) <= 1e-12);
    const auto xy = pearson(x, y), yx = pearson(y, x);
    CHECK(xy.r == yx.r);
    CHECK(std::abs(xy.r) <= 1.0);
    CHECK(xy.p_value >= 0.0);
    CHECK(xy.p_value <= 1.0);
  }
}

TEST_CASE("metric names") {
  for (Metric m : kAllMetrics) CHECK(parse_metric(to_string(m)) == m);
  CHECK(to_string(Metric::kYulesI) == "yules_i");
  CHECK_FALSE(parse_metric("comet").has_value());
}

TEST_CASE("summarize") {
  SUBCASE("means and closest mark") {
    const std::vector<SystemTable> s{
        table("HT", {{"a", {{Metric::kMtld, 96.0}}}, {"b", {{Metric::kMtld, 96.1}}}}),
        table("vanilla", {{"a", {{Metric::kMtld, 90.0}, {Metric::kBleu, 20.0}}}, {"b", {{Metric::kMtld, 90.42}, {Metric::kBleu, 22.0}}}}),
        table("tailored", {{"a", {{Metric::kMtld, 94.0}, {Metric::kBleu, 19.0}}}, {"b", {{Metric::kMtld, 94.16}, {Metric::kBleu, 19.5}}}})};
    const auto rows = summarize(s, std::string("HT"));
    REQUIRE(rows.size() == 3);
    const auto mtld = static_cast<std::size_t>(Metric::kMtld);
    const auto bleu = static_cast<std::size_t>(Metric::kBleu);
    CHECK(*rows[0].means[mtld] == doctest::Approx(96.05));
    CHECK(*rows[1].means[mtld] == doctest::Approx(90.21));
    CHECK(*rows[2].means[mtld] == doctest::Approx(94.08));
    CHECK_FALSE(rows[1].closest[mtld]);
    CHECK(rows[2].closest[mtld]);
    CHECK_FALSE(rows[0].means[bleu].has_value());
    CHECK_FALSE(rows[1].closest[bleu]);
    CHECK_FALSE(rows[2].closest[bleu]);

    std::ostringstream out;
    write_summary_csv(out, rows);
    CHECK(out.str() ==
          "system,ttr,yules_i,mtld,ptf,cdu,syn_ttr,bleu,closest_to_ht\n"
          "HT,,,96.050000,,,,,\n"
          "vanilla,,,90.210000,,,,21.000000,\n"
          "tailored,,,94.080000,,,,19.250000,mtld\n");
  }
  SUBCASE("two books average") {
    const std::vector<SystemTable> s{table("x", {{"a", {{Metric::kMtld, 90}}}, {"b", {{Metric::kMtld, 100}}}})};
    const auto rows = summarize(s);
    CHECK(*rows[0].means[static_cast<std::size_t>(Metric::kMtld)] == 95.0);
    CHECK(rows[0].closest[static_cast<std::size_t>(Metric::kMtld)]);
  }
  SUBCASE("book set mismatch lists missing books") {
    const std::vector<SystemTable> s{table("x", {{"a", {}}, {"b", {}}}), table("y", {{"a", {}}, {"c", {}}})};
    try {
      summarize(s);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("x lacks 'c'") != std::string::npos);
      CHECK(msg.find("y lacks 'b'") != std::string::npos);
    }
  }
}

TEST_CASE("parse_metric_table") {
  std::istringstream in("book_id,title,mtld,bleu,ttr\nb1,\"A, B\",80.5,,0.1\nb2,C,90,30,0.2\n");
  const auto t = parse_metric_table(in, "sys");
  CHECK(t.system == "sys");
  REQUIRE(t.books.size() == 2);
  CHECK(t.books.at("b1").at(Metric::kMtld) == 80.5);
  CHECK_FALSE(t.books.at("b1").count(Metric::kBleu));
  CHECK(t.books.at("b2").at(Metric::kBleu) == 30.0);

  std::istringstream no_id("title,mtld\nx,1\n");
  CHECK_THROWS_AS(parse_metric_table(no_id, "s"), ParseError);
  std::istringstream bad("book_id,mtld\nb1,abc\n");
  try {
    parse_metric_table(bad, "s");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
