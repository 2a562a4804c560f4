#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexdiv/diversity.hpp"

namespace lexdiv {

struct LexDivScore {
  std::string book_id;
  double normalized_ttr = 0.0;
  double normalized_yules_i = 0.0;
  double normalized_mtld = 0.0;
  double lexdiv = 0.0;  // mean of the three normalized components
};

// Min-max normalizes each metric over the given books (a metric equal on every
// book normalizes to 0.5) and averages the three. Output follows input order.
// Throws InputError with fewer than two books, on duplicate ids, or when a
// book has an undefined metric.
std::vector<LexDivScore> lexdiv_scores(std::span<const DiversityProfile> profiles);

struct RankAssignment {
  std::string book_id;
  double lexdiv = 0.0;
  std::size_t bin_index = 0;      // 1 = least diverse
  std::size_t selected_rank = 0;  // 1 = highest originality probability

  bool operator==(const RankAssignment&) const = default;
};

// Group sizes for `books` items in `n` bins: floor(books/n) each, remainder in
// the last bin.
std::vector<std::size_t> bin_sizes(std::size_t books, std::size_t n);

// Sorts ascending by lexdiv (ties by book id), cuts into bin_sizes() groups and
// maps bin b to rank n + 1 - b. Output is in that sorted order.
// Throws std::invalid_argument when n < 1 or there are fewer books than bins.
std::vector<RankAssignment> assign_bins(std::span<const LexDivScore> scores, std::size_t n);

// CSV `book_id,lexdiv,bin_index,selected_rank`.
void write_assignments_csv(std::ostream& out, std::span<const RankAssignment> assignments);

}  // namespace lexdiv
