#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexdiv/corpus.hpp"
#include "lexdiv/scoring.hpp"
#include "lexdiv/tailoring.hpp"

namespace lexdiv {

// Candidates plus their originality probabilities, and the permutation that
// visits them in descending probability (ties keep decoder order).
struct RankedCandidateSet {
  CandidateSet set;
  std::vector<double> probabilities;  // aligned with set.candidates
  std::vector<std::size_t> order;
};

// Throws InputError when probabilities.size() != candidates.size().
RankedCandidateSet rank_candidates(CandidateSet cs, std::span<const double> probabilities);

// Index (into set.candidates) of the candidate at 1-based `rank` of the sorted
// order, clamped to the last position. Throws std::invalid_argument for rank 0.
std::size_t select_rank(const RankedCandidateSet& rcs, std::size_t rank);
const std::string& select_rank_text(const RankedCandidateSet& rcs, std::size_t rank);

// Source of originality probabilities for candidates that carry none inline.
class OriginalityScorer {
 public:
  virtual ~OriginalityScorer() = default;
  virtual std::optional<double> probability(const CandidateSet& cs, std::size_t cand_idx) const = 0;
};

class ModelScorer final : public OriginalityScorer {
 public:
  explicit ModelScorer(const ScorerModel& model) : model_(model) {}
  std::optional<double> probability(const CandidateSet& cs, std::size_t cand_idx) const override;

 private:
  const ScorerModel& model_;
};

class ScoreTableScorer final : public OriginalityScorer {
 public:
  explicit ScoreTableScorer(const ScoreMap& scores) : scores_(scores) {}
  std::optional<double> probability(const CandidateSet& cs, std::size_t cand_idx) const override;

 private:
  const ScoreMap& scores_;
};

struct SentenceChoice {
  std::uint64_t sent_id = 0;
  std::size_t cand_idx = 0;
  double p_original = 0.0;

  bool operator==(const SentenceChoice&) const = default;
};

struct RerankedBook {
  std::string book_id;
  std::size_t rank = 1;
  std::vector<std::string> lines;  // one per sentence, in sent_id order
  std::vector<SentenceChoice> choices;
  std::vector<std::string> warnings;

  double mean_selected_probability() const;
};

// Result of scoring a whole book once; selection at any rank is then cheap.
struct ScoredBook {
  std::string book_id;
  std::vector<RankedCandidateSet> sentences;  // in sent_id order
  std::vector<std::string> warnings;
};

// Scores every candidate of one book. Inline p_original values win over the
// scorer (a warning is recorded when the scorer also had a value). `scorer`
// may be null when every candidate carries p_original. Throws InputError for
// sets of another book, duplicate sent_ids, or a candidate without any score
// (naming sent_id and cand_idx).
ScoredBook score_book(const std::string& book_id, std::span<const CandidateSet> sets,
                      const OriginalityScorer* scorer);

RerankedBook select_book(const ScoredBook& scored, std::size_t rank);

RerankedBook rerank_book(std::span<const CandidateSet> sets, const RankAssignment& assignment,
                         const OriginalityScorer* scorer);

// Sidecar CSV `sent_id,chosen_cand_idx,p_original`.
void write_choices_csv(std::ostream& out, const RerankedBook& book);
// One line per sentence.
void write_document(std::ostream& out, const RerankedBook& book);

}  // namespace lexdiv
