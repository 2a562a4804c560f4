#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace lexdiv {

inline constexpr std::size_t kBleuOrder = 4;

// Sufficient statistics; additive over sentences.
struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> correct{};
  std::array<std::uint64_t, kBleuOrder> total{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

struct BleuResult {
  double score = 0.0;                         // 0..100
  std::array<double, kBleuOrder> precisions{};  // percentages, after smoothing
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
};

// The mteval-v13a tokenization used by default in WMT-style BLEU: punctuation
// and symbols are split off, periods and commas except inside numbers.
std::string tokenize_13a(std::string_view line);

BleuStats sentence_stats(std::string_view hypothesis, std::string_view reference);

// Case-sensitive BLEU-4 with exponential smoothing of zero-match orders and
// the standard brevity penalty.
BleuResult bleu_from_stats(const BleuStats& stats);

// Throws InputError on differing sentence counts or an empty corpus.
BleuResult corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references);

}  // namespace lexdiv
