#include "lexdiv/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexdiv/error.hpp"
#include "lexdiv/utf8.hpp"

namespace lexdiv {
namespace {

constexpr char32_t kApostrophe = U'\'';
constexpr char32_t kRightQuote = U'’';

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(BookRole role) {
  switch (role) {
    case BookRole::kSource: return "source";
    case BookRole::kHumanTranslation: return "human_translation";
    case BookRole::kMachineTranslation: return "machine_translation";
  }
  return "source";
}

BookRole parse_role(std::string_view text) {
  if (text == "source") return BookRole::kSource;
  if (text == "human_translation") return BookRole::kHumanTranslation;
  if (text == "machine_translation") return BookRole::kMachineTranslation;
  throw ParseError("unknown book role '" + std::string(text) + "'");
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kAdj: return "ADJ";
    case Pos::kNoun: return "NOUN";
    case Pos::kVerb: return "VERB";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(std::string_view tag) {
  std::string upper(tag);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  }
  if (upper == "ADJ") return Pos::kAdj;
  if (upper == "NOUN") return Pos::kNoun;
  if (upper == "VERB") return Pos::kVerb;
  return Pos::kOther;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      return out;
    }
    out.emplace_back(text.substr(start, at - start));
    start = at + 1;
  }
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<BookRef> parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                                    const std::string& source_name) {
  std::vector<BookRef> books;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    utf8::require_valid(line, source_name);
    if (is_blank(line)) continue;
    const auto fields = split(line, '\t');
    if (!header_seen) {
      const std::vector<std::string> expected{"id", "title", "role", "language", "path"};
      if (fields != expected) {
        throw ParseError(source_name, lineno, "expected header 'id\\ttitle\\trole\\tlanguage\\tpath'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ParseError(source_name, lineno, "expected 5 tab-separated fields, got " +
                                                std::to_string(fields.size()));
    }
    BookRef book;
    book.id = fields[0];
    book.title = fields[1];
    if (book.id.empty()) throw ParseError(source_name, lineno, "empty book id");
    try {
      book.role = parse_role(fields[2]);
    } catch (const ParseError& e) {
      throw ParseError(source_name, lineno, e.what());
    }
    book.language = fields[3];
    if (book.language.empty()) throw ParseError(source_name, lineno, "empty language for book '" + book.id + "'");
    if (fields[4].empty()) throw ParseError(source_name, lineno, "empty path for book '" + book.id + "'");
    std::filesystem::path p(fields[4]);
    book.path = p.is_absolute() ? p : base_dir / p;
    if (!seen.insert(book.id).second) {
      throw ParseError(source_name, lineno, "duplicate book id '" + book.id + "'");
    }
    books.push_back(std::move(book));
  }
  return books;
}

std::vector<BookRef> load_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_manifest(in, path.parent_path(), path.string());
}

std::vector<std::string> tokenize_for_metrics(std::string_view text) {
  utf8::require_valid(text, "<text>");
  std::vector<std::string> tokens;
  std::string current;
  // A pending apostrophe is only emitted once a word character follows it.
  bool pending_apostrophe = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    if (utf8::is_alnum(cp)) {
      if (pending_apostrophe) current.push_back('\'');
      pending_apostrophe = false;
      utf8::append(current, utf8::fold(cp));
      continue;
    }
    if ((cp == kApostrophe || cp == kRightQuote) && !current.empty() && !pending_apostrophe) {
      pending_apostrophe = true;
      continue;
    }
    pending_apostrophe = false;
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenSeq tokenize_document(const BookRef& book, std::span<const std::string> lines) {
  TokenSeq seq;
  seq.book = book;
  seq.sentence_bounds.reserve(lines.size());
  for (const auto& line : lines) {
    SentenceSpan span{seq.tokens.size(), seq.tokens.size()};
    for (auto& tok : tokenize_for_metrics(line)) seq.tokens.push_back(std::move(tok));
    span.end = seq.tokens.size();
    seq.sentence_bounds.push_back(span);
  }
  return seq;
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("error reading " + path.string());
  return std::move(buf).str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  utf8::require_valid(text, path.string());
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) strip_cr(l);
  return lines;
}

TokenSeq load_book(const BookRef& book) {
  try {
    const auto lines = read_lines(book.path);
    return tokenize_document(book, lines);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error("book '" + book.id + "': " + e.what());
  }
}

std::vector<CandidateSet> parse_candidates(std::istream& in, const std::string& source_name) {
  using nlohmann::json;
  std::vector<CandidateSet> sets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (is_blank(line)) continue;
    auto fail = [&](const std::string& what) { return ParseError(source_name, lineno, what); };
    utf8::require_valid(line, source_name + ":" + std::to_string(lineno));
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw fail("expected a JSON object");
    CandidateSet cs;
    if (!j.contains("book_id") || !j["book_id"].is_string()) throw fail("'book_id' must be a string");
    cs.book_id = j["book_id"].get<std::string>();
    if (!j.contains("sent_id") || !j["sent_id"].is_number_integer() || j["sent_id"].get<std::int64_t>() < 0) {
      throw fail("'sent_id' must be a non-negative integer");
    }
    cs.sent_id = j["sent_id"].get<std::uint64_t>();
    if (j.contains("source_text")) {
      if (!j["source_text"].is_string()) throw fail("'source_text' must be a string");
      cs.source_text = j["source_text"].get<std::string>();
    }
    if (!j.contains("candidates") || !j["candidates"].is_array()) throw fail("'candidates' must be an array");
    const auto& cands = j["candidates"];
    if (cands.empty()) throw fail("candidate list must be non-empty");
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto& c = cands[k];
      const std::string where = "candidate " + std::to_string(k) + ": ";
      if (!c.is_object() || !c.contains("text") || !c["text"].is_string()) {
        throw fail(where + "expected an object with string 'text'");
      }
      Candidate cand{c["text"].get<std::string>(), std::nullopt};
      if (c.contains("p_original") && !c["p_original"].is_null()) {
        if (!c["p_original"].is_number()) throw fail(where + "'p_original' must be a number");
        const double p = c["p_original"].get<double>();
        if (!(p >= 0.0 && p <= 1.0)) {
          throw fail(where + "p_original " + c["p_original"].dump() + " outside range [0,1]");
        }
        cand.p_original = p;
      }
      cs.candidates.push_back(std::move(cand));
    }
    sets.push_back(std::move(cs));
  }
  return sets;
}

std::vector<CandidateSet> load_candidates(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_candidates(in, path.string());
}

void write_candidates(std::ostream& out, std::span<const CandidateSet> sets) {
  using nlohmann::ordered_json;
  for (const auto& cs : sets) {
    ordered_json j;
    j["book_id"] = cs.book_id;
    j["sent_id"] = cs.sent_id;
    j["source_text"] = cs.source_text;
    j["candidates"] = ordered_json::array();
    for (const auto& c : cs.candidates) {
      ordered_json cj;
      cj["text"] = c.text;
      if (c.p_original) cj["p_original"] = *c.p_original;
      j["candidates"].push_back(std::move(cj));
    }
    out << j.dump() << '\n';
  }
}

std::vector<LemmaAnnotation> parse_lemmas(std::istream& in, const std::string& source_name) {
  std::vector<LemmaAnnotation> out;
  std::string line;
  std::size_t lineno = 0;
  bool open = false;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    utf8::require_valid(line, source_name);
    if (is_blank(line)) {
      open = false;
      continue;
    }
    if (line[0] == '#') {
      const auto fields = split_whitespace(std::string_view(line).substr(1));
      if (fields.size() != 2) throw ParseError(source_name, lineno, "expected '# book_id sent_id'");
      LemmaAnnotation ann;
      ann.book_id = fields[0];
      try {
        std::size_t used = 0;
        ann.sent_id = std::stoull(fields[1], &used);
        if (used != fields[1].size() || fields[1][0] == '-') throw std::invalid_argument("sent_id");
      } catch (const std::logic_error&) {
        throw ParseError(source_name, lineno, "invalid sent_id '" + fields[1] + "'");
      }
      out.push_back(std::move(ann));
      open = true;
      continue;
    }
    if (!open) throw ParseError(source_name, lineno, "token row outside a '# book_id sent_id' block");
    const auto fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source_name, lineno, "expected 'surface\\tlemma\\tpos'");
    }
    out.back().entries.push_back({fields[0], fields[1], parse_pos(fields[2])});
  }
  return out;
}

std::vector<LemmaAnnotation> load_lemmas(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_lemmas(in, path.string());
}

}  // namespace lexdiv
