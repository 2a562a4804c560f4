#pragma once

// Test-only reference implementations. Each one follows the textbook
// definition literally and shares no code with the library.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::optional<double> ttr(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  const std::set<std::string> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

// Frequency spectrum: t[i] = number of types occurring exactly i times.
inline std::map<int, int> spectrum(const std::vector<std::string>& tokens) {
  std::map<std::string, int> freq;
  for (const auto& t : tokens) freq[t] += 1;
  std::map<int, int> spec;
  for (const auto& [type, f] : freq) spec[f] += 1;
  return spec;
}

inline std::optional<double> yules_i(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  const auto spec = spectrum(tokens);
  double v = 0.0;
  double weighted = 0.0;
  for (const auto& [i, t] : spec) {
    v += t;
    weighted += static_cast<double>(i) * static_cast<double>(i) * t;
  }
  if (weighted - v == 0.0) return std::nullopt;
  return v * v / (weighted - v);
}

// Literal walk: the running segment is kept as a list and its TTR recomputed
// from scratch after every token.
inline double mtld_factors_literal(const std::vector<std::string>& tokens, double threshold) {
  double factors = 0.0;
  std::vector<std::string> segment;
  for (const auto& tok : tokens) {
    segment.push_back(tok);
    const std::set<std::string> types(segment.begin(), segment.end());
    const double seg_ttr = static_cast<double>(types.size()) / static_cast<double>(segment.size());
    if (seg_ttr <= threshold) {
      factors += 1.0;
      segment.clear();
    }
  }
  if (!segment.empty()) {
    const std::set<std::string> types(segment.begin(), segment.end());
    const double seg_ttr = static_cast<double>(types.size()) / static_cast<double>(segment.size());
    factors += (1.0 - seg_ttr) / (1.0 - threshold);
  }
  return factors;
}

inline std::optional<double> mtld(const std::vector<std::string>& tokens, double threshold = 0.72) {
  if (tokens.empty()) return std::nullopt;
  const std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  const double f = mtld_factors_literal(tokens, threshold);
  const double b = mtld_factors_literal(reversed, threshold);
  if (f == 0.0 || b == 0.0) return std::nullopt;
  const double n = static_cast<double>(tokens.size());
  return (n / f + n / b) / 2.0;
}

// Synonym-table scores over rows given as plain count vectors.
using Rows = std::vector<std::vector<std::uint64_t>>;

inline std::vector<const std::vector<std::uint64_t>*> scored_rows(const Rows& rows) {
  std::vector<const std::vector<std::uint64_t>*> out;
  for (const auto& r : rows) {
    std::uint64_t total = 0;
    for (auto c : r) total += c;
    if (r.size() >= 2 && total > 0) out.push_back(&r);
  }
  return out;
}

inline std::optional<double> ptf(const Rows& rows) {
  const auto use = scored_rows(rows);
  if (use.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto* r : use) {
    std::uint64_t total = 0, best = 0;
    for (auto c : *r) total += c, best = c > best ? c : best;
    sum += static_cast<double>(best) / static_cast<double>(total);
  }
  return sum / static_cast<double>(use.size());
}

inline std::optional<double> cdu(const Rows& rows) {
  const auto use = scored_rows(rows);
  if (use.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto* r : use) {
    double total = 0.0;
    for (auto c : *r) total += static_cast<double>(c);
    const double u = total / static_cast<double>(r->size());
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (auto c : *r) {
      dot += static_cast<double>(c) * u;
      na += static_cast<double>(c) * static_cast<double>(c);
      nb += u * u;
    }
    sum += 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
  }
  return sum / static_cast<double>(use.size());
}

inline std::optional<double> syn_ttr(const Rows& rows) {
  const auto use = scored_rows(rows);
  if (use.empty()) return std::nullopt;
  double types = 0.0, tokens = 0.0;
  for (const auto* r : use) {
    for (auto c : *r) {
      types += c >= 1 ? 1.0 : 0.0;
      tokens += static_cast<double>(c);
    }
  }
  return types / tokens;
}

inline std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t max_len, int max_alphabet) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> alpha(1, max_alphabet);
  const int a = alpha(rng);
  std::uniform_int_distribution<int> pick(0, a - 1);
  std::vector<std::string> out(len(rng));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + pick(rng)));
  return out;
}

}  // namespace oracle
