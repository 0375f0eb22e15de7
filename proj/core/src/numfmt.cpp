#include "sc231/numfmt.hpp"

#include <charconv>
#include <cstring>

#include "sc231/errors.hpp"

namespace sc231 {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("nan") == std::string::npos && s.find("inf") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view token) {
  token = trim(token);
  double out = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw DomainError("not a number: '" + std::string(token) + "'");
  return out;
}

long long parse_int(std::string_view token) {
  token = trim(token);
  long long out = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw DomainError("not an integer: '" + std::string(token) + "'");
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace sc231
