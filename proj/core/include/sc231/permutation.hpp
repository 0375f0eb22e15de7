#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sc231/errors.hpp"

namespace sc231 {

/// A permutation of {1..n}, n >= 1. The constructor validates that the
/// values form a bijection; use unchecked() only for values that are a
/// permutation by construction.
class Permutation {
 public:
  explicit Permutation(std::vector<std::int32_t> values);

  static Permutation identity(int n);
  static Permutation unchecked(std::vector<std::int32_t> values);

  /// Accepts the comma form "4,6,8,5,11,7,2,9,10,3,1" for any length and the
  /// compact digit form "45231" for n <= 9.
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(values_.size()); }

  /// Value at 0-based position.
  std::int32_t operator[](int pos) const { return values_[static_cast<std::size_t>(pos)]; }

  std::span<const std::int32_t> values() const noexcept { return values_; }

  /// Compact digits for n <= 9, comma-separated otherwise.
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct unchecked_t {};
  Permutation(unchecked_t, std::vector<std::int32_t> v) : values_(std::move(v)) {}

  std::vector<std::int32_t> values_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// Positional reversal.
Permutation reverse(const Permutation& p);

/// Value complement: each entry i becomes n+1-i.
Permutation complement(const Permutation& p);

/// 0-based positions i with p[i-1] < p[i] > p[i+1].
std::vector<int> peak_positions(const Permutation& p);

/// True iff p has no peak, i.e. p is valley-shaped (decreasing, then
/// increasing around the entry 1). These are exactly the periodic points of
/// the sc231 map.
bool is_periodic(const Permutation& p);

/// Largest m such that for every j <= m the values {1..j} occupy a contiguous
/// run of positions. Always in {1..n}, never n-1; equals n iff p is periodic.
int index_of(const Permutation& p);

/// Number of entries strictly between the values 1 and 2. Requires n >= 2.
int gap_1_2(const Permutation& p);

}  // namespace sc231
