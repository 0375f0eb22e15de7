#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sc231 {

/// Shortest decimal string that parses back to the same binary64 value, with
/// a trailing ".0" appended to integral values ("0" becomes "0.0"). This is
/// the rendering used for every floating-point number the tools print.
std::string format_double(double x);

/// Strict parsers; the whole (trimmed) token must be consumed.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char sep);

}  // namespace sc231
