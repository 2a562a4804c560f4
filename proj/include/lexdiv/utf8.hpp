#pragma once

#include <string>
#include <string_view>

namespace lexdiv::utf8 {

// Returns the byte offset of the first invalid sequence, or npos when `text`
// is well-formed UTF-8 (no overlongs, no surrogates, max U+10FFFF).
std::size_t find_invalid(std::string_view text);

inline bool is_valid(std::string_view text) {
  return find_invalid(text) == std::string_view::npos;
}

// Throws ParseError naming `source` when `text` is not valid UTF-8.
void require_valid(std::string_view text, const std::string& source);

// Decodes the code point starting at `pos` and advances `pos`. Input must be
// valid UTF-8.
char32_t next(std::string_view text, std::size_t& pos);

void append(std::string& out, char32_t cp);

// Unicode letter or digit, per the C library's UTF-8 locale tables.
bool is_alnum(char32_t cp);

// Simple (1:1) case fold: lower(upper(cp)).
char32_t fold(char32_t cp);

char32_t to_upper(char32_t cp);

std::string fold_case(std::string_view text);
std::string to_upper(std::string_view text);

}  // namespace lexdiv::utf8
