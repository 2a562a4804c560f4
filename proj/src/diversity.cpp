#include "lexdiv/diversity.hpp"

#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"

namespace lexdiv {
namespace {

// Dense type ids in order of first appearance.
std::vector<std::uint32_t> intern(std::span<const std::string> tokens, std::size_t& n_types) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  ids.reserve(tokens.size());
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<std::uint32_t>(ids.size()));
    out.push_back(it->second);
  }
  n_types = ids.size();
  return out;
}

template <typename It>
double mtld_factors(It first, It last, std::size_t n_types, double threshold) {
  std::vector<std::uint32_t> seen(n_types, 0);
  std::vector<std::uint32_t> touched;
  std::size_t segment_tokens = 0;
  std::size_t segment_types = 0;
  double factors = 0.0;
  double segment_ttr = 1.0;
  for (It it = first; it != last; ++it) {
    ++segment_tokens;
    if (seen[*it]++ == 0) {
      ++segment_types;
      touched.push_back(*it);
    }
    segment_ttr = static_cast<double>(segment_types) / static_cast<double>(segment_tokens);
    if (segment_ttr <= threshold) {
      factors += 1.0;
      for (auto id : touched) seen[id] = 0;
      touched.clear();
      segment_tokens = 0;
      segment_types = 0;
      segment_ttr = 1.0;
    }
  }
  if (segment_tokens > 0) factors += (1.0 - segment_ttr) / (1.0 - threshold);
  return factors;
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("MTLD threshold must lie in (0, 1)");
  }
}

}  // namespace

double ttr(std::span<const std::string> tokens) {
  if (tokens.empty()) throw UndefinedMetric("TTR undefined for an empty token sequence");
  std::size_t n_types = 0;
  intern(tokens, n_types);
  return static_cast<double>(n_types) / static_cast<double>(tokens.size());
}

double yules_i(std::span<const std::string> tokens) {
  if (tokens.empty()) throw UndefinedMetric("Yule's I undefined for an empty token sequence");
  std::size_t n_types = 0;
  const auto ids = intern(tokens, n_types);
  std::vector<std::uint64_t> freq(n_types, 0);
  for (auto id : ids) ++freq[id];
  // sum over types of f^2 equals sum_i i^2 * t(i,N)
  std::uint64_t m2 = 0;
  for (auto f : freq) m2 += f * f;
  const std::uint64_t v = n_types;
  if (m2 == v) throw UndefinedMetric("Yule's I undefined: all tokens are distinct");
  return static_cast<double>(v * v) / static_cast<double>(m2 - v);
}

double mtld_forward(std::span<const std::string> tokens, double threshold) {
  check_threshold(threshold);
  if (tokens.empty()) throw UndefinedMetric("MTLD undefined for an empty token sequence");
  std::size_t n_types = 0;
  const auto ids = intern(tokens, n_types);
  const double f = mtld_factors(ids.begin(), ids.end(), n_types, threshold);
  if (f == 0.0) throw UndefinedMetric("MTLD undefined: zero factors (TTR never drops)");
  return static_cast<double>(tokens.size()) / f;
}

double mtld(std::span<const std::string> tokens, double threshold) {
  check_threshold(threshold);
  if (tokens.empty()) throw UndefinedMetric("MTLD undefined for an empty token sequence");
  std::size_t n_types = 0;
  const auto ids = intern(tokens, n_types);
  const double forward = mtld_factors(ids.begin(), ids.end(), n_types, threshold);
  const double backward = mtld_factors(ids.rbegin(), ids.rend(), n_types, threshold);
  if (forward == 0.0 || backward == 0.0) {
    throw UndefinedMetric("MTLD undefined: zero factors (TTR never drops)");
  }
  const auto n = static_cast<double>(tokens.size());
  return (n / forward + n / backward) / 2.0;
}

DiversityProfile profile_tokens(std::string book_id, std::span<const std::string> tokens,
                                double mtld_threshold) {
  if (tokens.empty()) throw UndefinedMetric("book '" + book_id + "' has no tokens");
  DiversityProfile p;
  p.book_id = std::move(book_id);
  p.n_tokens = tokens.size();
  intern(tokens, p.n_types);
  p.ttr = static_cast<double>(p.n_types) / static_cast<double>(p.n_tokens);
  try {
    p.yules_i = yules_i(tokens);
  } catch (const UndefinedMetric&) {
  }
  try {
    p.mtld = mtld(tokens, mtld_threshold);
  } catch (const UndefinedMetric&) {
  }
  return p;
}

DiversityProfile profile_book(const BookRef& book, double mtld_threshold) {
  const TokenSeq seq = load_book(book);
  return profile_tokens(book.id, seq.tokens, mtld_threshold);
}

void write_profiles_csv(std::ostream& out, std::span<const DiversityProfile> profiles) {
  out << "book_id,n_tokens,n_types,ttr,yules_i,mtld\n";
  for (const auto& p : profiles) {
    out << csv_field(p.book_id) << ',' << p.n_tokens << ',' << p.n_types << ','
        << fixed(p.ttr) << ',' << fixed(p.yules_i) << ',' << fixed(p.mtld) << '\n';
  }
}

}  // namespace lexdiv
