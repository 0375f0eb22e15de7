// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expects the CLI binary path as argv[1] (or $SC231_CLI) for the
// determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sc231/analyze.hpp"
#include "sc231/enumerate.hpp"
#include "sc231/machine.hpp"
#include "sc231/numfmt.hpp"
#include "sc231/sample.hpp"
#include "sc231/verify.hpp"

using namespace sc231;

namespace {

std::string g_cli;

struct Check {
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

// Exact length summaries for n <= 11, recomputed here from scratch and
// asserted digit for digit.
struct ExactRow {
  int n;
  int max;
  std::uint64_t count_at_max;
  const char* average;
};
constexpr ExactRow kExactRows[] = {
    {1, 0, 1, "0.0"},
    {2, 0, 2, "0.0"},
    {3, 2, 1, "0.5"},
    {4, 4, 1, "1.25"},
    {5, 6, 2, "2.1083333333333334"},
    {6, 8, 1, "2.948611111111111"},
    {7, 10, 4, "3.778373015873016"},
    {8, 12, 2, "4.629861111111111"},
    {9, 14, 2, "5.510821759259259"},
    {10, 16, 88, "6.427365244708994"},
    {11, 20, 1, "7.37919314674523"},
};

// Exact averages for the fit; 12..14 come from completed full scans that are
// too slow for this suite to recompute.
const std::map<int, double> kExactAverages = {
    {3, 0.5},
    {4, 1.25},
    {5, 2.1083333333333334},
    {6, 2.948611111111111},
    {7, 3.778373015873016},
    {8, 4.629861111111111},
    {9, 5.510821759259259},
    {10, 6.427365244708994},
    {11, 7.37919314674523},
    {12, 8.366963456907033},
    {13, 9.394762786403412},
    {14, 10.465681418116624},
};

// Published estimate table used for interval-symmetry validation only (its
// sampling seeds are unknown, so the numbers themselves are not reproduced).
struct EstimateRow {
  int n;
  const char* mean;
  double lo;
  double hi;
};
constexpr EstimateRow kEstimateRows[] = {
    {15, "11.465", 11.055417, 11.874583},
    {25, "24.5025", 23.870502, 25.134498},
    {50, "69.3925", 68.150269, 70.634731},
    {100, "195.1575", 192.79904, 197.51596},
    {200, "541.89", 537.73894, 546.04106},
    {300, "964.975", 959.12593, 970.82407},
    {400, "1444.46", 1436.5756, 1452.3444},
    {500, "1954.0025", 1944.4278, 1963.5772},
    {600, "2496.2875", 2485.2875, 2507.2875},
    {700, "3071.16", 3058.5745, 3083.7455},
    {800, "3676.2975", 3662.5979, 3689.9971},
    {900, "4291.2775", 4276.211, 4306.344},
    {1000, "4920.8125", 4904.9479, 4936.6771},
};

std::map<int, ExhaustiveResult> g_scans;  // filled by criterion 1, reused by 2

void criterion_exact_table(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& row : kExactRows) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExhaustiveResult r = exhaustive_summary(row.n, 0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "  n=%d scanned in %.2fs\n", row.n, secs);

    c.expect(r.summary.max_sort_number == row.max,
             "n=" + std::to_string(row.n) + ": max " +
                 std::to_string(r.summary.max_sort_number) + " != " + std::to_string(row.max));
    c.expect(r.summary.count_at_max == row.count_at_max,
             "n=" + std::to_string(row.n) + ": count at max " +
                 std::to_string(r.summary.count_at_max) + " != " +
                 std::to_string(row.count_at_max));
    const std::string avg = format_double(r.summary.average);
    c.expect(avg == row.average, "n=" + std::to_string(row.n) + ": average '" + avg +
                                     "' != '" + row.average + "'");
    c.expect(r.histogram.total() == factorial(row.n),
             "n=" + std::to_string(row.n) + ": histogram total != n!");
    g_scans.emplace(row.n, r);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(total < 900, "scan of n <= 11 took " + format_double(total) + "s (budget 900s)");
}

void criterion_histogram_spots(Check& c) {
  const auto& h4 = g_scans.at(4).histogram;
  c.expect(h4.count(0) == 8 && h4.count(1) == 6 && h4.count(2) == 7,
           "q(4,0..2) != (8,6,7)");
  const auto& h7 = g_scans.at(7).histogram;
  c.expect(h7.count(2) == 1046 && h7.count(3) == 874 && h7.count(4) == 939,
           "q(7,2..4) != (1046,874,939)");
  for (int n = 1; n <= 11; ++n)
    c.expect(g_scans.at(n).histogram.count(0) == (std::uint64_t{1} << (n - 1)),
             "q(" + std::to_string(n) + ",0) != 2^(n-1)");
  // n = 12 periodic points, counted over the full 12! sweep.
  const PeriodicCount pc = count_periodic(12, 0);
  c.expect(pc.periodic == 2048, "q(12,0) = " + std::to_string(pc.periodic) + " != 2048");
  c.expect(pc.visited == factorial(12), "S_12 sweep visited " + std::to_string(pc.visited) +
                                            " != 12!");
}

void criterion_counterexample(Check& c) {
  const Permutation p = Permutation::parse("4,6,8,5,11,7,2,9,10,3,1");
  const int k = sort_number(p);
  c.expect(k == 19, "sort-number " + std::to_string(k) + " != 19");
  c.expect(k > 2 * 11 - 5, "sort-number does not exceed 2n-5");
}

void criterion_worked_trajectory(Check& c) {
  const Trajectory t = trajectory(Permutation::parse("45231"));
  const char* steps[] = {"45231", "13254", "35421", "51243", "43215"};
  const int indices[] = {1, 1, 2, 2, 5};
  c.expect(t.sort_number() == 4, "sort-number != 4");
  c.expect(t.steps.size() == 5, "trajectory length != 5");
  for (std::size_t i = 0; i < t.steps.size() && i < 5; ++i) {
    c.expect(t.steps[i].str() == steps[i],
             "step " + std::to_string(i) + " is " + t.steps[i].str());
    c.expect(index_of(t.steps[i]) == indices[i],
             "index of step " + std::to_string(i) + " is " +
                 std::to_string(index_of(t.steps[i])));
  }
}

void criterion_property_suites(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_all_suites(8, false, 0, [](const SuiteReport& rep) {
    std::fprintf(stderr, "  %s: %s (%llu checks, %.2fs)\n", rep.suite.c_str(),
                 rep.passed() ? "pass" : "FAIL",
                 static_cast<unsigned long long>(rep.checks), rep.elapsed_seconds);
  });
  for (const auto& rep : reports) {
    c.expect(rep.passed(), rep.suite + " failed (" +
                               (rep.failures.empty() ? std::string("no reproducer")
                                                     : rep.failures.front().input) +
                               ")");
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(total < 300, "suites took " + format_double(total) + "s (budget 300s)");
}

void criterion_v_chain(Check& c) {
  for (int n = 3; n <= 30; ++n) {
    const Permutation vn = v_permutation(n);
    c.expect(apply_sc231(reverse(vn)) == vn,
             "n=" + std::to_string(n) + ": one pass on reverse(V_n) is not V_n");
    std::vector<std::int32_t> shifted;
    shifted.push_back(n);
    const Permutation vprev = v_permutation(n - 1);
    for (const auto x : vprev.values()) shifted.push_back(x);
    c.expect(apply_sc231(vn) == Permutation::unchecked(shifted),
             "n=" + std::to_string(n) + ": one pass on V_n is not n||V_(n-1)");
    const int k = sort_number(reverse(vn));
    c.expect(k >= n - 1, "n=" + std::to_string(n) + ": sort-number of reverse(V_n) is " +
                             std::to_string(k));
  }
}

void criterion_sampling(Check& c) {
  const double exact_a11 = 294553777.0 / 39916800.0;
  c.expect(format_double(exact_a11) == "7.37919314674523", "exact a(11) literal mismatch");

  int hits = 0;
  std::vector<std::uint64_t> misses;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SampleRun r = sample_stats(11, 1000, seed, 0.99, 0);
    if (r.stats.ci_low <= exact_a11 && exact_a11 <= r.stats.ci_high)
      ++hits;
    else
      misses.push_back(seed);
  }
  std::fprintf(stderr, "  CI covered the exact a(11) in %d/100 seeded runs\n", hits);
  if (!misses.empty()) {
    std::fprintf(stderr, "  seeds missing the exact value:");
    for (const auto s : misses) std::fprintf(stderr, " %llu", (unsigned long long)s);
    std::fprintf(stderr, "\n");
  }
  c.expect(hits >= 95, "coverage " + std::to_string(hits) + "/100 < 95");

  // Interval symmetry of the published estimates: the midpoint reproduces the
  // printed mean at its printed precision.
  for (const auto& row : kEstimateRows) {
    const double mid = 0.5 * (row.lo + row.hi);
    const std::string mean(row.mean);
    const auto dot = mean.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mean.size() - dot - 1);
    const double tol = 0.5 * std::pow(10.0, -decimals) + 1e-12;
    c.expect(std::fabs(mid - parse_double(mean)) <= tol,
             "n=" + std::to_string(row.n) + ": CI midpoint " + format_double(mid) +
                 " is not the printed mean " + mean);
  }
}

void criterion_fit(Check& c) {
  // Synthetic exact recovery.
  std::vector<DataPoint> synth;
  for (int x = 1; x <= 10; ++x)
    synth.push_back({static_cast<double>(x), 2.0 * std::pow(x, 1.5)});
  const FitResult exact = power_fit(synth);
  c.expect(std::fabs(exact.a - 2.0) <= 1e-9, "synthetic a not recovered");
  c.expect(std::fabs(exact.b - 1.5) <= 1e-9, "synthetic b not recovered");

  // Pipeline data: exact averages for 3..14 plus default-seed estimates on
  // the published n grid.
  std::vector<DataPoint> pts;
  for (const auto& [n, avg] : kExactAverages) pts.push_back({static_cast<double>(n), avg});
  double prev_estimate = 0;
  bool monotone = true;
  for (const auto& row : kEstimateRows) {
    const auto t0 = std::chrono::steady_clock::now();
    const SampleRun r = sample_stats(row.n, 400, 0, 0.99, 0);
    std::fprintf(stderr, "  n=%d estimate %.4f in %.2fs\n", row.n, r.stats.mean,
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    pts.push_back({static_cast<double>(row.n), r.stats.mean});
    monotone = monotone && r.stats.mean > prev_estimate;
    prev_estimate = r.stats.mean;
  }
  c.expect(monotone, "default-seed estimates are not increasing over the n grid");

  const FitResult fit = power_fit(pts);
  std::fprintf(stderr, "  fit: a=%.6f b=%.6f r=%.6f\n", fit.a, fit.b, fit.r);
  c.expect(fit.b >= 1.28 && fit.b <= 1.42,
           "exponent b = " + format_double(fit.b) + " outside [1.28, 1.42]");
  c.expect(fit.r >= 0.999, "goodness r = " + format_double(fit.r) + " < 0.999");
}

std::string run_cli(const std::string& args, int& exit_code) {
  const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int rc = pclose(pipe);
  exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

void criterion_determinism(Check& c) {
  if (g_cli.empty()) {
    c.expect(false, "CLI path not provided (argv[1] or $SC231_CLI)");
    return;
  }
  const std::string fit_file = "/tmp/sc231_acceptance_fit.csv";
  {
    std::FILE* f = std::fopen(fit_file.c_str(), "w");
    std::fprintf(f, "n,y\n");
    for (int x = 2; x <= 12; ++x) std::fprintf(f, "%d,%.17g\n", x, 3.0 * std::pow(x, 1.4));
    std::fclose(f);
  }

  struct Cmd {
    std::string args;
    bool threaded;
  };
  const std::vector<Cmd> commands = {
      {"trace 13254", false},
      {"sort-number 45231 --format json", false},
      {"exhaustive --n 8 --format json", true},
      {"sample --n-list 15,25 --samples 60 --seed 7 --format json", true},
      {"verify --suite index-monovariant --max-n 7 --format json", true},
      {"preimages 4321 --format json", false},
      {"fit --input " + fit_file + " --format json", false},
  };

  for (const auto& cmd : commands) {
    std::vector<std::string> variants;
    if (cmd.threaded)
      for (const char* t : {"1", "2", "8"})
        variants.push_back(cmd.args + " --threads " + t);
    else
      variants.push_back(cmd.args);

    std::string reference;
    bool first = true;
    for (const auto& v : variants) {
      for (int round = 0; round < 2; ++round) {
        int rc = 0;
        const std::string out = run_cli(v, rc);
        c.expect(rc == 0, "'" + v + "' exited " + std::to_string(rc));
        c.expect(!out.empty(), "'" + v + "' produced no output");
        if (first) {
          reference = out;
          first = false;
        } else {
          c.expect(out == reference, "'" + v + "' output differs across runs/threads");
        }
      }
    }
    std::fprintf(stderr, "  %s: byte-stable across %zu runs\n", cmd.args.c_str(),
                 variants.size() * 2);
  }
  std::remove(fit_file.c_str());
}

struct Criterion {
  const char* label;
  std::function<void(Check&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  if (g_cli.empty())
    if (const char* env = std::getenv("SC231_CLI")) g_cli = env;

  const std::vector<Criterion> criteria = {
      {"exact length summaries for n = 1..11", criterion_exact_table},
      {"histogram spot values and periodic-point counts", criterion_histogram_spots},
      {"length-11 counterexample has sort-number 19", criterion_counterexample},
      {"worked trajectory 45231 -> 43215 with indices 1,1,2,2,5",
       criterion_worked_trajectory},
      {"property suites pass exhaustively up to n = 8", criterion_property_suites},
      {"constructive lower-bound family V_n for 3 <= n <= 30", criterion_v_chain},
      {"seeded sampling brackets the exact a(11); intervals are symmetric",
       criterion_sampling},
      {"power-law fit: exact recovery and pipeline exponent window", criterion_fit},
      {"byte-identical CLI output across reruns and thread counts",
       criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(check);
    } catch (const std::exception& e) {
      check.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.problems.empty()) {
      std::printf("[PASS] criterion %zu: %s\n", i + 1, criteria[i].label);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %zu: %s\n", i + 1, criteria[i].label);
      for (const auto& p : check.problems) std::printf("       - %s\n", p.c_str());
    }
    std::fprintf(stderr, "  criterion %zu finished in %.2fs\n", i + 1, secs);
    std::fflush(stdout);
  }

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
