#include "lexdiv/rerank.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "lexdiv/error.hpp"
#include "lexdiv/format.hpp"

namespace lexdiv {

RankedCandidateSet rank_candidates(CandidateSet cs, std::span<const double> probabilities) {
  if (probabilities.size() != cs.candidates.size()) {
    throw InputError("book '" + cs.book_id + "' sentence " + std::to_string(cs.sent_id) + ": " +
                     std::to_string(probabilities.size()) + " probabilities for " +
                     std::to_string(cs.candidates.size()) + " candidates");
  }
  RankedCandidateSet r;
  r.probabilities.assign(probabilities.begin(), probabilities.end());
  r.order.resize(probabilities.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
    return r.probabilities[a] > r.probabilities[b];
  });
  r.set = std::move(cs);
  return r;
}

std::size_t select_rank(const RankedCandidateSet& rcs, std::size_t rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (rcs.order.empty()) throw InputError("no candidates to select from");
  return rcs.order[std::min(rank, rcs.order.size()) - 1];
}

const std::string& select_rank_text(const RankedCandidateSet& rcs, std::size_t rank) {
  return rcs.set.candidates[select_rank(rcs, rank)].text;
}

std::optional<double> ModelScorer::probability(const CandidateSet& cs, std::size_t cand_idx) const {
  return predict_proba(model_, cs.candidates.at(cand_idx).text);
}

std::optional<double> ScoreTableScorer::probability(const CandidateSet& cs, std::size_t cand_idx) const {
  const auto it = scores_.find(ScoreKey{cs.book_id, cs.sent_id, cand_idx});
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

double RerankedBook::mean_selected_probability() const {
  if (choices.empty()) return 0.0;
  double s = 0.0;
  for (const auto& c : choices) s += c.p_original;
  return s / static_cast<double>(choices.size());
}

ScoredBook score_book(const std::string& book_id, std::span<const CandidateSet> sets,
                      const OriginalityScorer* scorer) {
  std::vector<const CandidateSet*> sorted;
  for (const auto& cs : sets) {
    if (cs.book_id != book_id) {
      throw InputError("candidate set for book '" + cs.book_id + "' passed while reranking '" + book_id + "'");
    }
    sorted.push_back(&cs);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const CandidateSet* a, const CandidateSet* b) { return a->sent_id < b->sent_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->sent_id == sorted[i - 1]->sent_id) {
      throw InputError("book '" + book_id + "': duplicate sent_id " + std::to_string(sorted[i]->sent_id));
    }
  }

  ScoredBook out;
  out.book_id = book_id;
  std::size_t overridden = 0;
  for (const CandidateSet* cs : sorted) {
    std::vector<double> probs;
    probs.reserve(cs->candidates.size());
    for (std::size_t k = 0; k < cs->candidates.size(); ++k) {
      const auto& inline_p = cs->candidates[k].p_original;
      const std::optional<double> scored = scorer ? scorer->probability(*cs, k) : std::nullopt;
      if (inline_p) {
        overridden += scored.has_value();
        probs.push_back(*inline_p);
      } else if (scored) {
        probs.push_back(*scored);
      } else {
        throw InputError("book '" + book_id + "': missing score for sent_id " + std::to_string(cs->sent_id) +
                         ", cand_idx " + std::to_string(k));
      }
    }
    out.sentences.push_back(rank_candidates(*cs, probs));
  }
  if (overridden > 0) {
    out.warnings.push_back("book '" + book_id + "': " + std::to_string(overridden) +
                           " inline p_original values override scorer values");
  }
  return out;
}

RerankedBook select_book(const ScoredBook& scored, std::size_t rank) {
  RerankedBook out;
  out.book_id = scored.book_id;
  out.rank = rank;
  out.warnings = scored.warnings;
  for (const auto& rcs : scored.sentences) {
    const std::size_t idx = select_rank(rcs, rank);
    out.lines.push_back(rcs.set.candidates[idx].text);
    out.choices.push_back({rcs.set.sent_id, idx, rcs.probabilities[idx]});
  }
  return out;
}

RerankedBook rerank_book(std::span<const CandidateSet> sets, const RankAssignment& assignment,
                         const OriginalityScorer* scorer) {
  return select_book(score_book(assignment.book_id, sets, scorer), assignment.selected_rank);
}

void write_choices_csv(std::ostream& out, const RerankedBook& book) {
  out << "sent_id,chosen_cand_idx,p_original\n";
  for (const auto& c : book.choices) out << c.sent_id << ',' << c.cand_idx << ',' << fixed(c.p_original) << '\n';
}

void write_document(std::ostream& out, const RerankedBook& book) {
  for (std::string line : book.lines) {
    std::replace(line.begin(), line.end(), '\n', ' ');
    out << line << '\n';
  }
}

}  // namespace lexdiv
