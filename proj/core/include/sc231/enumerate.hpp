#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sc231/machine.hpp"
#include "sc231/permutation.hpp"

namespace sc231 {

/// n! for 0 <= n <= 20 (the uint64 range).
std::uint64_t factorial(int n);

/// Lexicographic successor within S_n, or nullopt for the reverse identity.
std::optional<Permutation> next_perm(const Permutation& p);

/// 0-based lexicographic rank within S_n.
std::uint64_t rank_of(const Permutation& p);

/// Inverse of rank_of.
Permutation nth_permutation(int n, std::uint64_t rank);

struct PrefixBlock {
  Permutation start;    // lexicographically first permutation of the block
  std::uint64_t count;  // block size, (n-depth)!
};

/// Splits S_n into n*(n-1)*...*(n-depth+1) lexicographic blocks that share a
/// fixed length-`depth` prefix. Requires 1 <= depth <= min(n, 3).
std::vector<PrefixBlock> prefix_partition(int n, int depth);

/// Exact counts q(n,k) of length-n permutations with sort-number k.
class SortHistogram {
 public:
  static constexpr int kDefaultBuckets = 30;

  explicit SortHistogram(int n);

  int n() const noexcept { return n_; }
  std::uint64_t count(int k) const;
  void add(int k, std::uint64_t c = 1);

  /// Largest k with count(k) > 0; -1 when the histogram is empty.
  int max_k() const;
  std::uint64_t total() const;
  /// Sum of k * count(k).
  std::uint64_t weighted_sum() const;

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  void merge_from(const SortHistogram& other);

  /// Equality of contents; trailing empty buckets are ignored.
  friend bool operator==(const SortHistogram& a, const SortHistogram& b);

 private:
  int n_;
  std::vector<std::uint64_t> counts_;
};

/// Pointwise sum; throws DomainError when the lengths differ.
SortHistogram histogram_merge(const SortHistogram& a, const SortHistogram& b);

struct LengthSummary {
  int n = 0;
  int max_sort_number = 0;
  std::uint64_t count_at_max = 0;
  std::uint64_t sum_of_sort_numbers = 0;
  /// sum / total in one binary64 division.
  double average = 0.0;

  static LengthSummary from(const SortHistogram& h);

  friend bool operator==(const LengthSummary&, const LengthSummary&) = default;
};

/// One histogram per leading entry 1..n; their totals add up to n!.
struct LeadingEntrySummary {
  int n = 0;
  std::vector<SortHistogram> per_leading;

  const SortHistogram& histogram_for(int lead) const;
  LengthSummary summary_for(int lead) const;
};

struct ExhaustiveResult {
  SortHistogram histogram;
  LengthSummary summary;
  LeadingEntrySummary leading;
};

/// Resumable-scan state: everything accumulated before next_rank.
struct ScanCheckpoint {
  int n = 0;
  std::uint64_t next_rank = 0;
  std::vector<SortHistogram> per_leading;

  bool complete() const { return next_rank >= factorial(n); }
  Permutation next_permutation() const;  // requires !complete()
};

struct ScanOptions {
  int threads = 0;  // 0 = hardware concurrency
  std::optional<ScanCheckpoint> resume;
  /// Called on the scanning thread at merged-block boundaries, in
  /// lexicographic order.
  std::function<void(const ScanCheckpoint&)> on_checkpoint;
  std::uint64_t checkpoint_every_blocks = 1;
};

/// Scans all of S_n, computing each permutation's sort-number. The result is
/// bit-identical for any thread count. Lengths above 20 are rejected; scans
/// above 14 are possible but take hours (use a checkpoint).
ExhaustiveResult exhaustive_summary(int n, int threads = 0);
ExhaustiveResult exhaustive_summary(int n, const ScanOptions& options);

/// Counts permutations of S_n without a peak, in parallel. Visits all n!
/// permutations; also reports the visit count for cross-checking.
struct PeriodicCount {
  std::uint64_t periodic = 0;
  std::uint64_t visited = 0;
};
PeriodicCount count_periodic(int n, int threads = 0);

/// Checkpoint file: line 1 the next unprocessed permutation (comma form),
/// then one "lead,k,count" row per nonzero bucket.
void save_checkpoint(const ScanCheckpoint& cp, const std::string& path);
std::optional<ScanCheckpoint> load_checkpoint(const std::string& path);

/// CSV with header "n,k,count", one row per nonzero bucket.
void emit_histogram_csv(const SortHistogram& h, std::ostream& os);

/// JSON: {n, max, count_at_max, sum, average, histogram:{k:count},
/// leading:{l:{...}}}.
std::string exhaustive_to_json(const ExhaustiveResult& r, int indent = 2);

}  // namespace sc231
