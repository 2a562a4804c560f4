#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexdiv {

enum class BookRole { kSource, kHumanTranslation, kMachineTranslation };

std::string_view to_string(BookRole role);
// Accepts the manifest spellings: source, human_translation, machine_translation.
BookRole parse_role(std::string_view text);

struct BookRef {
  std::string id;
  std::string title;
  BookRole role = BookRole::kSource;
  std::string language;
  std::filesystem::path path;

  bool operator==(const BookRef&) const = default;
};

// Half-open token index range [begin, end) for one input line.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const SentenceSpan&) const = default;
};

// Normalized word tokens of one book. `sentence_bounds` has one span per
// input line (possibly empty) and together they partition [0, tokens.size()).
struct TokenSeq {
  BookRef book;
  std::vector<std::string> tokens;
  std::vector<SentenceSpan> sentence_bounds;
};

struct Candidate {
  std::string text;
  std::optional<double> p_original;

  bool operator==(const Candidate&) const = default;
};

// One source sentence with its n-best hypotheses in decoder order.
struct CandidateSet {
  std::string book_id;
  std::uint64_t sent_id = 0;
  std::string source_text;
  std::vector<Candidate> candidates;

  bool operator==(const CandidateSet&) const = default;
};

enum class Pos { kAdj, kNoun, kVerb, kOther };

std::string_view to_string(Pos pos);
// ADJ, NOUN and VERB (case-insensitive) map to themselves; any other tag is kOther.
Pos parse_pos(std::string_view tag);

struct LemmaEntry {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kOther;

  bool operator==(const LemmaEntry&) const = default;
};

// Externally produced lemmatization of one source sentence, aligned 1:1 with
// its whitespace tokens.
struct LemmaAnnotation {
  std::string book_id;
  std::uint64_t sent_id = 0;
  std::vector<LemmaEntry> entries;

  bool operator==(const LemmaAnnotation&) const = default;
};

// Manifest: TSV with header `id title role language path`. Relative paths are
// resolved against `base_dir`.
std::vector<BookRef> parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                                    const std::string& source_name = "<manifest>");
std::vector<BookRef> load_manifest(const std::filesystem::path& path);

// Maximal runs of letters/digits, keeping apostrophes (' or U+2019, emitted as
// ') only between two word characters. Tokens are case-folded.
// Throws ParseError on invalid UTF-8.
std::vector<std::string> tokenize_for_metrics(std::string_view text);

// One sentence per line; sentence bounds follow the line structure.
TokenSeq tokenize_document(const BookRef& book, std::span<const std::string> lines);

// Reads a UTF-8 text file into lines (trailing '\r' stripped). Invalid UTF-8
// is a ParseError; an unreadable file is an Error naming the path.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

TokenSeq load_book(const BookRef& book);

// JSON-lines candidate files; decoder order of candidates is preserved.
std::vector<CandidateSet> parse_candidates(std::istream& in,
                                           const std::string& source_name = "<candidates>");
std::vector<CandidateSet> load_candidates(const std::filesystem::path& path);
void write_candidates(std::ostream& out, std::span<const CandidateSet> sets);

// Lemma TSV: per sentence a `# book_id sent_id` line, then `surface lemma pos`
// rows; blocks separated by blank lines.
std::vector<LemmaAnnotation> parse_lemmas(std::istream& in,
                                          const std::string& source_name = "<lemmas>");
std::vector<LemmaAnnotation> load_lemmas(const std::filesystem::path& path);

// Splits on ASCII whitespace, dropping empty fields.
std::vector<std::string> split_whitespace(std::string_view text);
// Splits on `sep`, keeping empty fields.
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace lexdiv
