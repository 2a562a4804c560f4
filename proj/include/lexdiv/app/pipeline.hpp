#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexdiv/corpus.hpp"
#include "lexdiv/diversity.hpp"

namespace lexdiv::app {

// A source book and its human translation, matched by identical title.
struct BookPair {
  BookRef source;
  BookRef human;
};

// Every source and every human translation must be paired; machine
// translations are ignored. Throws InputError naming the first unpaired book.
std::vector<BookPair> pair_source_and_human(std::span<const BookRef> books);

// The source book with the same title as `translation`, or InputError.
const BookRef& source_for(const BookRef& translation, std::span<const BookRef> books);

std::vector<BookRef> books_with_role(std::span<const BookRef> books, BookRole role);

std::vector<DiversityProfile> profile_books(std::span<const BookRef> books, double mtld_threshold,
                                            unsigned workers);

// Groups candidate sets by book id, keeping file order within a book.
std::map<std::string, std::vector<CandidateSet>> group_by_book(std::vector<CandidateSet> sets);

}  // namespace lexdiv::app
