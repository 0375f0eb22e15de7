#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sc231/permutation.hpp"

namespace sc231 {

/// splitmix64 stream. Streams are keyed by (seed, n, sample index) so that
/// parallel scheduling can never change which numbers a sample sees; the
/// generator is plain 64-bit integer arithmetic and therefore produces the
/// same sequence on every platform.
struct RngState {
  static constexpr const char* kAlgorithm = "splitmix64";

  std::uint64_t state = 0;

  static RngState from_seed(std::uint64_t seed);
  static RngState stream(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2);

  std::uint64_t next();

  /// Uniform in [0, bound), bound >= 1, unbiased via rejection.
  std::uint64_t bounded(std::uint64_t bound);
};

/// Uniform random permutation by Fisher-Yates, O(n).
Permutation random_perm(int n, RngState& rng);

struct MeanSd {
  double mean;
  double sd;  // sample standard deviation (m-1 denominator); NaN for m == 1
};
MeanSd mean_sd(std::span<const double> xs);

/// Inverse CDF of Student's t. Absolute error <= 1e-6. df >= 1,
/// prob in (0,1).
double t_quantile(double prob, std::int64_t df);

/// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

struct Interval {
  double low;
  double high;
};

/// mean +- t_quantile((1+level)/2, m-1) * sd / sqrt(m). Requires m >= 2.
Interval confidence_interval(double mean, double sd, std::int64_t m, double level);

struct SampleStats {
  int n = 0;
  std::int64_t m = 0;
  double mean = 0;
  double sd = 0;
  double ci_low = 0;
  double ci_high = 0;
  double level = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SampleStats&, const SampleStats&) = default;
};

struct SampleRun {
  SampleStats stats;
  std::vector<std::int32_t> sort_numbers;  // one per sample, in sample order

  friend bool operator==(const SampleRun&, const SampleRun&) = default;
};

/// Draws m independent uniform permutations of length n and computes each
/// sort-number. Identical (n, m, seed, level) give identical results for any
/// thread count.
SampleRun sample_stats(int n, std::int64_t m, std::uint64_t seed, double level,
                       int threads = 0);

/// Text layout: row 1 the n values, rows 2-5 means / SDs / CI lower / CI
/// upper bounds, then one row per sample index holding the raw sort-numbers
/// (columns follow row 1).
void emit_sample_grid(std::span<const SampleRun> runs, std::ostream& os);

/// JSON: {seed, level, samples, runs:[{n, m, mean, sd, ci_low, ci_high,
/// sort_numbers:[...]}]}.
std::string sample_to_json(std::span<const SampleRun> runs, int indent = 2);

}  // namespace sc231
