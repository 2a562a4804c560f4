#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexdiv/corpus.hpp"

namespace lexdiv {

inline constexpr double kDefaultMtldThreshold = 0.72;

// Whole-book lexical diversity. Undefined metrics (zero denominators) are
// left empty rather than reported as zero.
struct DiversityProfile {
  std::string book_id;
  std::size_t n_tokens = 0;
  std::size_t n_types = 0;
  double ttr = 0.0;
  std::optional<double> yules_i;
  std::optional<double> mtld;

  bool operator==(const DiversityProfile&) const = default;
};

// |types| / |tokens|. Throws UndefinedMetric on empty input.
double ttr(std::span<const std::string> tokens);

// Yule's I = V^2 / (sum_i i^2 * t(i,N) - V), t(i,N) being the number of types
// seen exactly i times. Throws UndefinedMetric when every token is distinct
// (or the input is empty).
double yules_i(std::span<const std::string> tokens);

// Bidirectional MTLD: the mean of the forward and backward factor passes.
// A factor completes when the running segment TTR drops to or below
// `threshold`; the trailing segment contributes (1 - ttr) / (1 - threshold).
// Throws UndefinedMetric when either pass has zero total factors, and
// std::invalid_argument when threshold is outside (0, 1).
double mtld(std::span<const std::string> tokens, double threshold = kDefaultMtldThreshold);

// One direction only; exposed for the analysis tools and tests.
double mtld_forward(std::span<const std::string> tokens, double threshold = kDefaultMtldThreshold);

DiversityProfile profile_tokens(std::string book_id, std::span<const std::string> tokens,
                                double mtld_threshold = kDefaultMtldThreshold);

// Throws UndefinedMetric naming the book when it has no tokens.
DiversityProfile profile_book(const BookRef& book, double mtld_threshold = kDefaultMtldThreshold);

// CSV `book_id,n_tokens,n_types,ttr,yules_i,mtld`; undefined cells are empty.
void write_profiles_csv(std::ostream& out, std::span<const DiversityProfile> profiles);

}  // namespace lexdiv
