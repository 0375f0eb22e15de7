#include <doctest.h>

#include <algorithm>
#include <vector>

#include "sc231/permutation.hpp"

using namespace sc231;

namespace {

InvalidPermutation::Reason reason_of(const std::vector<std::int32_t>& values) {
  try {
    Permutation p(values);
  } catch (const InvalidPermutation& e) {
    return e.reason();
  }
  throw std::logic_error("expected InvalidPermutation");
}

}  // namespace

TEST_CASE("construction accepts bijections and rejects everything else") {
  CHECK(Permutation({4, 5, 2, 3, 1}).str() == "45231");
  CHECK(Permutation({1}).size() == 1);

  CHECK(reason_of({1, 1, 2}) == InvalidPermutation::Reason::Duplicate);
  CHECK(reason_of({0, 1}) == InvalidPermutation::Reason::OutOfRange);
  CHECK(reason_of({2, 3}) == InvalidPermutation::Reason::OutOfRange);
  CHECK(reason_of({-1, 1}) == InvalidPermutation::Reason::OutOfRange);
  CHECK(reason_of({}) == InvalidPermutation::Reason::Empty);
}

TEST_CASE("parse handles compact and comma forms") {
  CHECK(Permutation::parse("45231") == Permutation({4, 5, 2, 3, 1}));
  CHECK(Permutation::parse("4,5,2,3,1") == Permutation({4, 5, 2, 3, 1}));
  CHECK(Permutation::parse(" 1 , 2 ") == Permutation({1, 2}));
  CHECK(Permutation::parse("4,6,8,5,11,7,2,9,10,3,1").size() == 11);
  CHECK(Permutation::parse("1") == Permutation({1}));

  CHECK_THROWS_AS(Permutation::parse(""), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("12x"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("1,,2"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("1,two"), InvalidPermutation);
  // Ten compact digits would be ambiguous.
  CHECK_THROWS_AS(Permutation::parse("1234567891"), InvalidPermutation);
  // Compact digits cannot express a 0, so "10" is not length-2 shorthand.
  CHECK_THROWS_AS(Permutation::parse("10"), InvalidPermutation);
}

TEST_CASE("str round-trips through parse") {
  const Permutation small = Permutation::parse("123456789");
  CHECK(small.str() == "123456789");
  const Permutation big = Permutation::parse("4,6,8,5,11,7,2,9,10,3,1");
  CHECK(big.str() == "4,6,8,5,11,7,2,9,10,3,1");
  CHECK(Permutation::parse(big.str()) == big);
}

TEST_CASE("reverse and complement") {
  CHECK(reverse(Permutation::parse("132")) == Permutation::parse("231"));
  CHECK(complement(Permutation::parse("15432")) == Permutation::parse("51234"));

  // Both maps are involutions.
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::int32_t> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    do {
      const Permutation p = Permutation::unchecked(v);
      CHECK(reverse(reverse(p)) == p);
      CHECK(complement(complement(p)) == p);
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("peaks and periodicity") {
  CHECK(is_periodic(Permutation::parse("43215")));
  CHECK_FALSE(is_periodic(Permutation::parse("13254")));
  CHECK(is_periodic(Permutation::parse("51234")));
  CHECK(is_periodic(Permutation::parse("1")));
  CHECK(is_periodic(Permutation::parse("21")));

  CHECK(peak_positions(Permutation::parse("13254")) == std::vector<int>{1, 3});
  CHECK(peak_positions(Permutation::parse("4321")).empty());
}

TEST_CASE("index_of matches the worked values") {
  CHECK(index_of(Permutation::parse("45231")) == 1);
  CHECK(index_of(Permutation::parse("13254")) == 1);
  CHECK(index_of(Permutation::parse("35421")) == 2);
  CHECK(index_of(Permutation::parse("51243")) == 2);
  CHECK(index_of(Permutation::parse("43215")) == 5);
  CHECK(index_of(Permutation::parse("231")) == 1);
  CHECK(index_of(Permutation::parse("1")) == 1);
  CHECK(index_of(Permutation::parse("12")) == 2);
  CHECK(index_of(Permutation::parse("21")) == 2);
  for (int n = 1; n <= 8; ++n) CHECK(index_of(Permutation::identity(n)) == n);
}

TEST_CASE("index n-1 never occurs and index n means periodic") {
  for (int n = 1; n <= 9; ++n) {
    std::vector<std::int32_t> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    do {
      const Permutation p = Permutation::unchecked(v);
      const int idx = index_of(p);
      CHECK(idx >= 1);
      CHECK(idx <= n);
      if (n >= 2) CHECK(idx != n - 1);
      CHECK((idx == n) == is_periodic(p));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST_CASE("gap_1_2") {
  CHECK(gap_1_2(Permutation::parse("45231")) == 1);
  CHECK(gap_1_2(Permutation::parse("12")) == 0);
  CHECK(gap_1_2(Permutation::parse("3142")) == 1);
  CHECK(gap_1_2(Permutation::parse("21534")) == 0);
  CHECK(gap_1_2(Permutation::parse("2534716")) == 4);
  CHECK_THROWS_AS(gap_1_2(Permutation::parse("1")), DomainError);
}
