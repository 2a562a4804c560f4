#include "lexdiv/app/pipeline.hpp"

#include "lexdiv/app/parallel.hpp"
#include "lexdiv/error.hpp"

namespace lexdiv::app {

std::vector<BookRef> books_with_role(std::span<const BookRef> books, BookRole role) {
  std::vector<BookRef> out;
  for (const auto& b : books) {
    if (b.role == role) out.push_back(b);
  }
  return out;
}

std::vector<BookPair> pair_source_and_human(std::span<const BookRef> books) {
  std::map<std::string, const BookRef*> sources;
  std::map<std::string, const BookRef*> humans;
  for (const auto& b : books) {
    auto* slot = b.role == BookRole::kSource ? &sources : b.role == BookRole::kHumanTranslation ? &humans : nullptr;
    if (slot == nullptr) continue;
    if (!slot->emplace(b.title, &b).second) {
      throw InputError("two " + std::string(to_string(b.role)) + " books share the title '" + b.title + "'");
    }
  }
  std::vector<BookPair> pairs;
  for (const auto& b : books) {
    if (b.role != BookRole::kSource && b.role != BookRole::kHumanTranslation) continue;
    const auto& other = b.role == BookRole::kSource ? humans : sources;
    const auto it = other.find(b.title);
    if (it == other.end()) {
      throw InputError("book '" + b.id + "' (" + std::string(to_string(b.role)) + ", title '" + b.title +
                       "') has no matching " + (b.role == BookRole::kSource ? "human translation" : "source"));
    }
    if (b.role == BookRole::kSource) pairs.push_back({b, *it->second});
  }
  return pairs;
}

const BookRef& source_for(const BookRef& translation, std::span<const BookRef> books) {
  for (const auto& b : books) {
    if (b.role == BookRole::kSource && b.title == translation.title) return b;
  }
  throw InputError("book '" + translation.id + "' has no source book titled '" + translation.title + "'");
}

std::vector<DiversityProfile> profile_books(std::span<const BookRef> books, double mtld_threshold,
                                            unsigned workers) {
  return parallel_map(books.size(), workers, [&](std::size_t i) { return profile_book(books[i], mtld_threshold); });
}

std::map<std::string, std::vector<CandidateSet>> group_by_book(std::vector<CandidateSet> sets) {
  std::map<std::string, std::vector<CandidateSet>> out;
  for (auto& cs : sets) out[cs.book_id].push_back(std::move(cs));
  return out;
}

}  // namespace lexdiv::app
