#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sc231/permutation.hpp"

namespace sc231 {

/// All q in S_n with sc231(q) == p, in lexicographic order. Brute force over
/// n!, so n <= 9.
std::vector<Permutation> preimages(const Permutation& p);

struct SuiteFailure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct SuiteReport {
  std::string suite;
  int max_n = 0;
  bool forced = false;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  /// Lexicographically earliest reproducers, capped at kMaxStoredFailures.
  std::vector<SuiteFailure> failures;
  double elapsed_seconds = 0;

  static constexpr std::size_t kMaxStoredFailures = 16;

  bool passed() const noexcept { return failure_count == 0 && checks > 0; }
};

/// Registered suite names, in the order `all` runs them:
///   thm42-lower              sort-number of reverse(V_n) >= n-1 (constructive)
///   thm43-upper              every sort-number <= (n+1)(n-2)/2 (exhaustive)
///   lemma431-gap             gap between 1 and 2 never grows; strictly
///                            shrinks after the first pass while nonzero
///   cor432-index             index-1 permutations reach index > 1 in n-1 passes
///   index-monovariant        index never decreases under one pass
///   claim47-leading          leading entry 1 or n => sort-number != 2
///   claim48-periodic-by-leading  periodic points with leading entry k number
///                            round(2^(k-2)), half rounded up
///   prop45-nonunimodal       q(4,.) and q(7,.) non-unimodality witnesses
///   prop46-doubling          lift preserves sort-number; q(n+1,k) >= 2 q(n,k)
///   periodic-count           q(n,0) = 2^(n-1)
///   valley-reversal          one pass reverses every peak-free permutation
///   preimage-bound           max preimage count = 2^(n-2); image counts sum to n!
std::span<const std::string_view> suite_names();

/// Runs one suite up to max_n. Exhaustive suites cap at n = 10 (12 with
/// force); preimage-bound caps at 8; thm42-lower at 100. Unknown names and
/// over-cap requests throw DomainError.
SuiteReport run_suite(std::string_view name, int max_n, bool force = false,
                      int threads = 0);

/// Runs every suite, clamping max_n to each suite's cap. on_done fires after
/// each suite completes.
std::vector<SuiteReport> run_all_suites(
    int max_n, bool force = false, int threads = 0,
    const std::function<void(const SuiteReport&)>& on_done = {});

/// JSON: {reports:[{suite, max_n, forced, checks, failure_count,
/// failures:[...], passed}], all_passed}. Timing stays out of the document so
/// reruns are byte-identical.
std::string reports_to_json(std::span<const SuiteReport> reports, int indent = 2);

}  // namespace sc231
