#include "sc231/permutation.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "sc231/numfmt.hpp"

namespace sc231 {
namespace {

void check_bijection(const std::vector<std::int32_t>& values) {
  const auto n = static_cast<std::int32_t>(values.size());
  if (n == 0) throw InvalidPermutation(InvalidPermutation::Reason::Empty, "empty permutation");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const std::int32_t v : values) {
    if (v < 1 || v > n)
      throw InvalidPermutation(InvalidPermutation::Reason::OutOfRange,
                               "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v - 1)])
      throw InvalidPermutation(InvalidPermutation::Reason::Duplicate,
                               "duplicate value " + std::to_string(v));
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<std::int32_t> values) : values_(std::move(values)) {
  check_bijection(values_);
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw DomainError("permutation length must be >= 1");
  std::vector<std::int32_t> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(unchecked_t{}, std::move(v));
}

Permutation Permutation::unchecked(std::vector<std::int32_t> values) {
  return Permutation(unchecked_t{}, std::move(values));
}

Permutation Permutation::parse(std::string_view text) {
  text = trim(text);
  if (text.empty())
    throw InvalidPermutation(InvalidPermutation::Reason::Empty, "empty permutation text");

  std::vector<std::int32_t> values;
  if (text.find(',') != std::string_view::npos) {
    for (const auto tok : split(text, ',')) {
      const auto t = trim(tok);
      if (t.empty())
        throw InvalidPermutation(InvalidPermutation::Reason::BadFormat,
                                 "empty field in '" + std::string(text) + "'");
      long long v = 0;
      try {
        v = parse_int(t);
      } catch (const DomainError&) {
        throw InvalidPermutation(InvalidPermutation::Reason::BadFormat,
                                 "bad value '" + std::string(t) + "'");
      }
      if (v < std::numeric_limits<std::int32_t>::min() ||
          v > std::numeric_limits<std::int32_t>::max())
        throw InvalidPermutation(InvalidPermutation::Reason::OutOfRange,
                                 "value " + std::string(t) + " out of range");
      values.push_back(static_cast<std::int32_t>(v));
    }
  } else {
    // Compact digit form, unambiguous only up to n = 9.
    if (text.size() > 9)
      throw InvalidPermutation(InvalidPermutation::Reason::BadFormat,
                               "compact form is limited to 9 entries; use commas");
    for (const char c : text) {
      if (c < '1' || c > '9')
        throw InvalidPermutation(InvalidPermutation::Reason::BadFormat,
                                 std::string("bad digit '") + c + "' in compact form");
      values.push_back(c - '0');
    }
  }
  return Permutation(std::move(values));
}

std::string Permutation::str() const {
  std::string out;
  if (size() <= 9) {
    for (const auto v : values_) out += static_cast<char>('0' + v);
  } else {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(values_[i]);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.str(); }

Permutation reverse(const Permutation& p) {
  std::vector<std::int32_t> v(p.values().rbegin(), p.values().rend());
  return Permutation::unchecked(std::move(v));
}

Permutation complement(const Permutation& p) {
  const auto n = static_cast<std::int32_t>(p.size());
  std::vector<std::int32_t> v;
  v.reserve(p.values().size());
  for (const auto x : p.values()) v.push_back(n + 1 - x);
  return Permutation::unchecked(std::move(v));
}

std::vector<int> peak_positions(const Permutation& p) {
  std::vector<int> out;
  const auto v = p.values();
  for (int i = 1; i + 1 < p.size(); ++i)
    if (v[i - 1] < v[i] && v[i] > v[i + 1]) out.push_back(i);
  return out;
}

bool is_periodic(const Permutation& p) {
  const auto v = p.values();
  for (int i = 1; i + 1 < p.size(); ++i)
    if (v[i - 1] < v[i] && v[i] > v[i + 1]) return false;
  return true;
}

int index_of(const Permutation& p) {
  const int n = p.size();
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(p[i])] = i;

  // Grow the value set {1..j}; it stays an index-j prefix block iff the
  // positions span exactly j slots.
  int lo = pos[1];
  int hi = pos[1];
  int index = 1;
  for (int j = 2; j <= n; ++j) {
    lo = std::min(lo, pos[static_cast<std::size_t>(j)]);
    hi = std::max(hi, pos[static_cast<std::size_t>(j)]);
    if (hi - lo + 1 != j) break;
    index = j;
  }
  return index;
}

int gap_1_2(const Permutation& p) {
  if (p.size() < 2) throw DomainError("gap_1_2 needs length >= 2");
  int p1 = -1;
  int p2 = -1;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 1) p1 = i;
    if (p[i] == 2) p2 = i;
  }
  return std::abs(p1 - p2) - 1;
}

}  // namespace sc231
