#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gridpolicy {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of the whole field (surrounding blanks allowed). Returns
/// nullopt on junk or trailing characters; "nan"/"inf" parse as non-finite.
std::optional<double> parse_double(std::string_view text);

/// Moves the decimal point of a numeric literal by `shift` places
/// ("12.5", -3 -> "0.0125"). Exact on the text, so a unit change by a power
/// of ten followed by its inverse reproduces the original double bit for bit.
/// Throws std::invalid_argument on malformed input.
std::string shift_decimal(std::string_view text, int shift);

}  // namespace gridpolicy
