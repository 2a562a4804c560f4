#include "lexdiv/sfa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"
#include "lexdiv/utf8.hpp"

namespace lexdiv {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

// Rows that take part in scoring.
template <typename Fn>
std::size_t for_each_scored_row(const SynonymTable& table, Fn&& fn) {
  std::size_t n = 0;
  for (const auto& row : table.rows) {
    if (row.counts.size() < 2 || row.total() == 0) continue;
    fn(row);
    ++n;
  }
  if (n == 0) throw UndefinedMetric("no synonym row with >= 2 options and a positive total");
  return n;
}

}  // namespace

void BilingualDictionary::add(std::string_view headword, Pos pos, std::span<const std::string> options) {
  Key key{utf8::fold_case(headword), pos};
  auto [it, inserted] = entries_.try_emplace(key);
  DictionaryEntry& entry = it->second;
  if (inserted) {
    entry.headword = key.first;
    entry.pos = pos;
  }
  for (const auto& opt : options) {
    if (std::find(entry.options.begin(), entry.options.end(), opt) == entry.options.end()) {
      entry.options.push_back(opt);
    }
  }
}

const DictionaryEntry* BilingualDictionary::find(std::string_view lemma, Pos pos) const {
  const auto it = entries_.find(Key{utf8::fold_case(lemma), pos});
  return it == entries_.end() ? nullptr : &it->second;
}

BilingualDictionary parse_dictionary(std::istream& in, const std::string& source_name) {
  BilingualDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    utf8::require_valid(line, source_name);
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(source_name, lineno, "expected 'headword\\tPOS\\toptions'");
    }
    const auto head = tokenize_for_metrics(fields[0]);
    if (head.empty()) throw ParseError(source_name, lineno, "empty headword");
    if (fields[1].empty()) throw ParseError(source_name, lineno, "empty POS");
    std::vector<std::string> options;
    for (const auto& raw : split(fields[2], ',')) {
      const auto toks = tokenize_for_metrics(raw);
      if (toks.empty()) throw ParseError(source_name, lineno, "empty translation option");
      options.push_back(join(toks));
    }
    dict.add(fields[0], parse_pos(fields[1]), options);
  }
  return dict;
}

BilingualDictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_dictionary(in, path.string());
}

std::uint64_t SynonymRow::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

SynonymTable count_options(std::span<const LemmaAnnotation> source_lemmas, const TokenSeq& target,
                           const BilingualDictionary& dict, std::span<const std::string> source_lines) {
  if (!source_lines.empty()) {
    for (const auto& ann : source_lemmas) {
      const std::string where = "book '" + ann.book_id + "' sentence " + std::to_string(ann.sent_id);
      if (ann.sent_id >= source_lines.size()) {
        throw InputError(where + ": no such source sentence (book has " +
                         std::to_string(source_lines.size()) + ")");
      }
      const auto n_ws = split_whitespace(source_lines[ann.sent_id]).size();
      if (n_ws != ann.entries.size()) {
        throw InputError(where + ": " + std::to_string(ann.entries.size()) +
                         " lemma entries for " + std::to_string(n_ws) + " source tokens");
      }
    }
  }

  std::map<BilingualDictionary::Key, std::pair<const DictionaryEntry*, std::uint64_t>> relevant;
  for (const auto& ann : source_lemmas) {
    for (const auto& e : ann.entries) {
      if (e.pos == Pos::kOther) continue;
      const DictionaryEntry* entry = dict.find(e.lemma, e.pos);
      if (entry == nullptr || !entry->relevant()) continue;
      auto& slot = relevant[{entry->headword, e.pos}];
      slot.first = entry;
      ++slot.second;
    }
  }

  // First-token index over the target, and the sentence each token belongs to.
  std::unordered_map<std::string_view, std::vector<std::size_t>> positions;
  for (std::size_t i = 0; i < target.tokens.size(); ++i) positions[target.tokens[i]].push_back(i);
  std::vector<std::size_t> sentence_of(target.tokens.size(), 0);
  for (std::size_t s = 0; s < target.sentence_bounds.size(); ++s) {
    const auto& b = target.sentence_bounds[s];
    for (std::size_t i = b.begin; i < b.end; ++i) sentence_of[i] = s;
  }

  auto count_matches = [&](const std::string& option) -> std::uint64_t {
    const auto words = split(option, ' ');
    const auto it = positions.find(words.front());
    if (it == positions.end()) return 0;
    std::uint64_t count = 0;
    std::size_t next_free = 0;
    for (const std::size_t start : it->second) {
      if (start < next_free) continue;
      const std::size_t end = start + words.size();
      if (end > target.tokens.size() || sentence_of[end - 1] != sentence_of[start]) continue;
      if (!std::equal(words.begin(), words.end(), target.tokens.begin() + static_cast<std::ptrdiff_t>(start))) {
        continue;
      }
      ++count;
      next_free = end;
    }
    return count;
  };

  SynonymTable table;
  for (const auto& [key, slot] : relevant) {
    SynonymRow row;
    row.lemma = key.first;
    row.pos = key.second;
    row.options = slot.first->options;
    row.source_occurrences = slot.second;
    row.counts.reserve(row.options.size());
    for (const auto& opt : row.options) row.counts.push_back(count_matches(opt));
    table.rows.push_back(std::move(row));
  }
  return table;
}

double ptf(const SynonymTable& table) {
  double sum = 0.0;
  const auto n = for_each_scored_row(table, [&](const SynonymRow& row) {
    const auto max = *std::max_element(row.counts.begin(), row.counts.end());
    sum += static_cast<double>(max) / static_cast<double>(row.total());
  });
  return sum / static_cast<double>(n);
}

double cdu(const SynonymTable& table) {
  double sum = 0.0;
  const auto n = for_each_scored_row(table, [&](const SynonymRow& row) {
    // cos(v, c*1) does not depend on c > 0, so the uniform vector is taken as all ones.
    double dot = 0.0;
    double norm2 = 0.0;
    for (auto c : row.counts) {
      const auto x = static_cast<double>(c);
      dot += x;
      norm2 += x * x;
    }
    const double cosine = dot / std::sqrt(norm2 * static_cast<double>(row.counts.size()));
    sum += std::max(0.0, 1.0 - cosine);
  });
  return sum / static_cast<double>(n);
}

double syn_ttr(const SynonymTable& table) {
  std::uint64_t types = 0;
  std::uint64_t tokens = 0;
  for_each_scored_row(table, [&](const SynonymRow& row) {
    for (auto c : row.counts) types += c > 0;
    tokens += row.total();
  });
  return static_cast<double>(types) / static_cast<double>(tokens);
}

SfaScores score_table(const SynonymTable& table) {
  SfaScores s;
  s.ptf = ptf(table);
  s.cdu = cdu(table);
  s.syn_ttr = syn_ttr(table);
  for (const auto& row : table.rows) s.n_relevant_words += row.counts.size() >= 2 && row.total() > 0;
  return s;
}

void write_synonym_table_csv(std::ostream& out, const SynonymTable& table) {
  out << "lemma,pos,option,count\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.options.size(); ++k) {
      out << csv_field(row.lemma) << ',' << to_string(row.pos) << ',' << csv_field(row.options[k])
          << ',' << row.counts[k] << '\n';
    }
  }
}

}  // namespace lexdiv
