#include "lexdiv/tailoring.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"

namespace lexdiv {
namespace {

std::vector<double> min_max(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double max = *hi;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(max == min ? 0.5 : (v - min) / (max - min));
  return out;
}

}  // namespace

std::vector<LexDivScore> lexdiv_scores(std::span<const DiversityProfile> profiles) {
  if (profiles.size() < 2) {
    throw InputError("LexDiv normalization needs at least 2 books, got " + std::to_string(profiles.size()));
  }
  std::set<std::string> ids;
  std::vector<double> ttr, yule, mtld;
  for (const auto& p : profiles) {
    if (!ids.insert(p.book_id).second) throw InputError("duplicate book '" + p.book_id + "'");
    if (!p.yules_i) throw InputError("book '" + p.book_id + "': Yule's I is undefined");
    if (!p.mtld) throw InputError("book '" + p.book_id + "': MTLD is undefined");
    ttr.push_back(p.ttr);
    yule.push_back(*p.yules_i);
    mtld.push_back(*p.mtld);
  }
  const auto nt = min_max(ttr);
  const auto ny = min_max(yule);
  const auto nm = min_max(mtld);
  std::vector<LexDivScore> out;
  out.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    out.push_back({profiles[i].book_id, nt[i], ny[i], nm[i], (nt[i] + ny[i] + nm[i]) / 3.0});
  }
  return out;
}

std::vector<std::size_t> bin_sizes(std::size_t books, std::size_t n) {
  if (n < 1) throw std::invalid_argument("rank count must be >= 1");
  if (books < n) {
    throw std::invalid_argument("cannot split " + std::to_string(books) + " books into " +
                                std::to_string(n) + " bins");
  }
  std::vector<std::size_t> sizes(n, books / n);
  sizes.back() += books % n;
  return sizes;
}

std::vector<RankAssignment> assign_bins(std::span<const LexDivScore> scores, std::size_t n) {
  const auto sizes = bin_sizes(scores.size(), n);
  std::vector<const LexDivScore*> sorted;
  for (const auto& s : scores) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const LexDivScore* a, const LexDivScore* b) {
    if (a->lexdiv != b->lexdiv) return a->lexdiv < b->lexdiv;
    return a->book_id < b->book_id;
  });
  std::vector<RankAssignment> out;
  out.reserve(sorted.size());
  std::size_t next = 0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t k = 0; k < sizes[b]; ++k, ++next) {
      out.push_back({sorted[next]->book_id, sorted[next]->lexdiv, b + 1, n - b});
    }
  }
  return out;
}

void write_assignments_csv(std::ostream& out, std::span<const RankAssignment> assignments) {
  out << "book_id,lexdiv,bin_index,selected_rank\n";
  for (const auto& a : assignments) {
    out << csv_field(a.book_id) << ',' << fixed(a.lexdiv) << ',' << a.bin_index << ',' << a.selected_rank << '\n';
  }
}

}  // namespace lexdiv
