#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexdiv/corpus.hpp"

namespace lexdiv {

// Translation options for one (headword, POS). Options are stored as
// normalized token strings (metrics tokenizer output joined by single spaces),
// distinct and in first-seen order.
struct DictionaryEntry {
  std::string headword;
  Pos pos = Pos::kOther;
  std::vector<std::string> options;

  // Only headwords with several translations take part in synonym analysis.
  bool relevant() const { return options.size() >= 2; }
};

class BilingualDictionary {
 public:
  using Key = std::pair<std::string, Pos>;

  // Merges with an existing entry for the same key (set semantics).
  void add(std::string_view headword, Pos pos, std::span<const std::string> options);

  // Headword lookup is case-insensitive. Returns nullptr when absent.
  const DictionaryEntry* find(std::string_view lemma, Pos pos) const;

  const std::map<Key, DictionaryEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Key, DictionaryEntry> entries_;
};

// TSV `headword POS option1,option2,...`; lines starting with '#' and blank
// lines are skipped.
BilingualDictionary parse_dictionary(std::istream& in, const std::string& source_name = "<dictionary>");
BilingualDictionary load_dictionary(const std::filesystem::path& path);

struct SynonymRow {
  std::string lemma;
  Pos pos = Pos::kOther;
  std::vector<std::string> options;
  std::vector<std::uint64_t> counts;  // aligned with `options`
  std::uint64_t source_occurrences = 0;

  std::uint64_t total() const;
  bool operator==(const SynonymRow&) const = default;
};

struct SynonymTable {
  std::vector<SynonymRow> rows;  // sorted by (lemma, pos)
};

// Builds the occurrence table for one translated book. A row is created for
// every source lemma tagged ADJ/NOUN/VERB whose dictionary entry has >= 2
// options; each option is counted by greedy, non-overlapping, left-to-right
// matching of its tokens inside each target sentence.
//
// When `source_lines` is non-empty, every annotation must refer to an existing
// line and carry one entry per whitespace token of it; otherwise InputError
// names the book and sentence.
SynonymTable count_options(std::span<const LemmaAnnotation> source_lemmas, const TokenSeq& target,
                           const BilingualDictionary& dict,
                           std::span<const std::string> source_lines = {});

struct SfaScores {
  double ptf = 0.0;
  double cdu = 0.0;
  double syn_ttr = 0.0;
  std::size_t n_relevant_words = 0;
};

// The three scores average over rows with >= 2 options and a positive total;
// with no such row they throw UndefinedMetric.
double ptf(const SynonymTable& table);
double cdu(const SynonymTable& table);
double syn_ttr(const SynonymTable& table);
SfaScores score_table(const SynonymTable& table);

// CSV `lemma,pos,option,count`, one line per option.
void write_synonym_table_csv(std::ostream& out, const SynonymTable& table);

}  // namespace lexdiv
