#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexdiv {

// Every floating-point value written to CSV/TSV output uses this many
// decimals, so reports are byte-stable across runs.
inline constexpr int kOutputPrecision = 6;

std::string fixed(double value, int decimals = kOutputPrecision);
// Empty string for an absent value.
std::string fixed(const std::optional<double>& value, int decimals = kOutputPrecision);

// Scientific notation with `digits` significant digits, e.g. 1.43437e-19.
std::string scientific(double value, int digits = kOutputPrecision);

// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> parse_csv_record(std::string_view line);

}  // namespace lexdiv
