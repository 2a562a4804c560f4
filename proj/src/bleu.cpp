#include "lexdiv/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <unordered_map>
#include <vector>

#include "lexdiv/error.hpp"
#include "lexdiv/utf8.hpp"

namespace lexdiv {
namespace {

// The code points Python's str.split()/rstrip() treat as whitespace.
bool is_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

std::vector<std::string> split_unicode_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    const char32_t cp = utf8::next(text, pos);
    if (is_space(cp)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.append(text.substr(start, pos - start));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string_view rstrip(std::string_view text) {
  std::size_t end = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    if (!is_space(utf8::next(text, pos))) end = pos;
  }
  return text.substr(0, end);
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t at = 0;
  while ((at = s.find(from, at)) != std::string::npos) {
    s.replace(at, from.size(), to);
    at += to.size();
  }
}

using NgramCounts = std::unordered_map<std::string, std::uint64_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens) {
  NgramCounts counts;
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        key += ' ';
        key += tokens[i + k];
      }
      ++counts[key];
    }
  }
  return counts;
}

std::size_t order_of(const std::string& key) {
  return static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    correct[n] += other.correct[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

std::string tokenize_13a(std::string_view input) {
  std::string line(input);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  line = " " + line + " ";

  static const std::regex symbols(R"(([\x7B-\x7E\x5B-\x60\x20-\x26\x28-\x2B\x3A-\x40\x2F]))");
  static const std::regex period_after(R"(([^0-9])([\.,]))");
  static const std::regex period_before(R"(([\.,])([^0-9]))");
  static const std::regex dash(R"(([0-9])(-))");
  line = std::regex_replace(line, symbols, " $1 ");
  line = std::regex_replace(line, period_after, "$1 $2 ");
  line = std::regex_replace(line, period_before, " $1 $2");
  line = std::regex_replace(line, dash, "$1 $2 ");

  std::string out;
  for (const auto& tok : split_unicode_whitespace(line)) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

BleuStats sentence_stats(std::string_view hypothesis, std::string_view reference) {
  const auto hyp = split_unicode_whitespace(tokenize_13a(rstrip(hypothesis)));
  const auto ref = split_unicode_whitespace(tokenize_13a(rstrip(reference)));
  const auto ref_counts = count_ngrams(ref);
  BleuStats s;
  s.hyp_len = hyp.size();
  s.ref_len = ref.size();
  for (const auto& [gram, count] : count_ngrams(hyp)) {
    const std::size_t n = order_of(gram) - 1;
    s.total[n] += count;
    const auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) s.correct[n] += std::min(count, it->second);
  }
  return s;
}

BleuResult bleu_from_stats(const BleuStats& stats) {
  BleuResult r;
  r.hyp_len = stats.hyp_len;
  r.ref_len = stats.ref_len;
  if (stats.hyp_len < stats.ref_len) {
    r.brevity_penalty = stats.hyp_len > 0
                            ? std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len))
                            : 0.0;
  }
  if (std::all_of(stats.correct.begin(), stats.correct.end(), [](auto c) { return c == 0; })) {
    r.score = 0.0;
    return r;
  }
  double smooth = 1.0;
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    if (stats.total[n] == 0) break;
    if (stats.correct[n] == 0) {
      smooth *= 2.0;
      r.precisions[n] = 100.0 / (smooth * static_cast<double>(stats.total[n]));
    } else {
      r.precisions[n] = 100.0 * static_cast<double>(stats.correct[n]) / static_cast<double>(stats.total[n]);
    }
  }
  // Geometric mean of ratios: a perfect match scores exactly 100.
  double log_sum = 0.0;
  for (double p : r.precisions) log_sum += p == 0.0 ? -9999999999.0 : std::log(p / 100.0);
  r.score = 100.0 * r.brevity_penalty * std::exp(log_sum / static_cast<double>(kBleuOrder));
  return r;
}

BleuResult corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  if (hypotheses.size() != references.size()) {
    throw InputError("BLEU needs equal sentence counts: " + std::to_string(hypotheses.size()) +
                     " hypotheses vs " + std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw InputError("BLEU of an empty corpus is undefined");
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    utf8::require_valid(hypotheses[i], "hypothesis " + std::to_string(i + 1));
    utf8::require_valid(references[i], "reference " + std::to_string(i + 1));
    total += sentence_stats(hypotheses[i], references[i]);
  }
  return bleu_from_stats(total);
}

}  // namespace lexdiv
