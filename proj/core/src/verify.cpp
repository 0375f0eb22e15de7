#include "sc231/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstring>
#include <sstream>

#include <json.hpp>

#include "sc231/enumerate.hpp"
#include "sc231/machine.hpp"
#include "scan_detail.hpp"

namespace sc231 {

std::vector<Permutation> preimages(const Permutation& p) {
  const int n = p.size();
  if (n > 9) throw DomainError("preimages brute-forces n!; limited to n <= 9");
  std::vector<Permutation> out;
  std::vector<std::int32_t> q(static_cast<std::size_t>(n));
  std::vector<std::int32_t> image(static_cast<std::size_t>(n));
  std::vector<std::int32_t> stack(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = i + 1;
  do {
    kernel::apply(q.data(), n, image.data(), stack.data());
    if (std::equal(image.begin(), image.end(), p.values().begin()))
      out.push_back(Permutation::unchecked(q));
  } while (std::next_permutation(q.begin(), q.end()));
  return out;
}

namespace {

std::string perm_str(const std::int32_t* v, int n) {
  return Permutation::unchecked(std::vector<std::int32_t>(v, v + n)).str();
}

// Per-worker failure collection, merged in block order so the stored
// reproducers are the lexicographically earliest ones.
struct FailList {
  std::uint64_t count = 0;
  std::vector<SuiteFailure> stored;

  void add(std::string input, std::string expected, std::string actual) {
    ++count;
    if (stored.size() < SuiteReport::kMaxStoredFailures)
      stored.push_back({std::move(input), std::move(expected), std::move(actual)});
  }
  void merge_from(FailList&& other) {
    count += other.count;
    for (auto& f : other.stored) {
      if (stored.size() >= SuiteReport::kMaxStoredFailures) break;
      stored.push_back(std::move(f));
    }
  }
};

struct ScanState {
  FailList fails;
  std::uint64_t checks = 0;
  std::vector<std::int32_t> work, tmp, stack;

  explicit ScanState(int n)
      : work(static_cast<std::size_t>(n)),
        tmp(static_cast<std::size_t>(n)),
        stack(static_cast<std::size_t>(n)) {}
};

// Runs visit over all of S_n for each n in [lo, hi] and folds the shared
// failure/check bookkeeping.
template <typename Visit>
void scan_lengths(SuiteReport& report, int lo, int hi, int threads, Visit visit) {
  for (int n = lo; n <= hi; ++n) {
    const auto items = detail::plan_items(n, 0);
    detail::scan_items<ScanState>(
        n, items, threads, [n] { return ScanState(n); },
        [&, n](ScanState& st, const std::int32_t* values) { visit(st, values, n); },
        [&](std::size_t, ScanState&& st) {
          report.checks += st.checks;
          report.failure_count += st.fails.count;
          for (auto& f : st.fails.stored) {
            if (report.failures.size() >= SuiteReport::kMaxStoredFailures) break;
            report.failures.push_back(std::move(f));
          }
        });
  }
}

int sort_count_of(ScanState& st, const std::int32_t* values, int n) {
  std::memcpy(st.work.data(), values, sizeof(std::int32_t) * static_cast<std::size_t>(n));
  return kernel::sort_count(st.work.data(), st.tmp.data(), st.stack.data(), n);
}

int index_of_raw(const std::int32_t* v, int n, std::int32_t* pos) {
  for (int i = 0; i < n; ++i) pos[v[i]] = i;
  int lo = pos[1];
  int hi = pos[1];
  int index = 1;
  for (int j = 2; j <= n; ++j) {
    lo = std::min(lo, pos[j]);
    hi = std::max(hi, pos[j]);
    if (hi - lo + 1 != j) break;
    index = j;
  }
  return index;
}

int gap_1_2_raw(const std::int32_t* v, int n) {
  int p1 = -1, p2 = -1;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 1) p1 = i;
    if (v[i] == 2) p2 = i;
  }
  return std::abs(p1 - p2) - 1;
}

// ---- suites ---------------------------------------------------------------

void suite_thm42_lower(SuiteReport& rep, int max_n, int /*threads*/) {
  for (int n = 3; n <= max_n; ++n) {
    const Permutation vn = v_permutation(n);
    const int k = sort_number(reverse(vn));
    ++rep.checks;
    if (k < n - 1) {
      ++rep.failure_count;
      rep.failures.push_back({reverse(vn).str(), "sort-number >= " + std::to_string(n - 1),
                              std::to_string(k)});
    }
  }
}

void suite_thm43_upper(SuiteReport& rep, int max_n, int threads) {
  scan_lengths(rep, 1, max_n, threads, [](ScanState& st, const std::int32_t* v, int n) {
    const int cap = iteration_cap(n);
    const int k = sort_count_of(st, v, n);
    ++st.checks;
    if (k > cap)
      st.fails.add(perm_str(v, n), "sort-number <= " + std::to_string(cap), std::to_string(k));
  });
}

void suite_lemma431_gap(SuiteReport& rep, int max_n, int threads) {
  scan_lengths(rep, 2, max_n, threads, [](ScanState& st, const std::int32_t* v, int n) {
    std::memcpy(st.work.data(), v, sizeof(std::int32_t) * static_cast<std::size_t>(n));
    std::int32_t* cur = st.work.data();
    std::int32_t* nxt = st.tmp.data();
    int gap = gap_1_2_raw(cur, n);
    const int cap = iteration_cap(n);
    for (int t = 0; t <= cap && kernel::has_peak(cur, n); ++t) {
      kernel::apply(cur, n, nxt, st.stack.data());
      std::swap(cur, nxt);
      const int next_gap = gap_1_2_raw(cur, n);
      if (next_gap > gap) {
        st.fails.add(perm_str(v, n), "gap never grows (pass " + std::to_string(t + 1) + ")",
                     std::to_string(gap) + " -> " + std::to_string(next_gap));
        break;
      }
      // From the second pass on the gap must strictly shrink while nonzero.
      if (t >= 1 && gap > 0 && next_gap >= gap) {
        st.fails.add(perm_str(v, n),
                     "gap strictly shrinks at pass " + std::to_string(t + 1),
                     std::to_string(gap) + " -> " + std::to_string(next_gap));
        break;
      }
      gap = next_gap;
    }
    ++st.checks;
  });
}

void suite_cor432_index(SuiteReport& rep, int max_n, int threads) {
  scan_lengths(rep, 3, max_n, threads, [](ScanState& st, const std::int32_t* v, int n) {
    std::array<std::int32_t, 32> pos;
    if (index_of_raw(v, n, pos.data()) != 1) return;
    std::memcpy(st.work.data(), v, sizeof(std::int32_t) * static_cast<std::size_t>(n));
    std::int32_t* cur = st.work.data();
    std::int32_t* nxt = st.tmp.data();
    for (int t = 0; t < n - 1; ++t) {
      kernel::apply(cur, n, nxt, st.stack.data());
      std::swap(cur, nxt);
    }
    ++st.checks;
    const int idx = index_of_raw(cur, n, pos.data());
    if (idx <= 1)
      st.fails.add(perm_str(v, n), "index > 1 after " + std::to_string(n - 1) + " passes",
                   "index " + std::to_string(idx));
  });
}

void suite_index_monovariant(SuiteReport& rep, int max_n, int threads) {
  scan_lengths(rep, 1, max_n, threads, [](ScanState& st, const std::int32_t* v, int n) {
    std::array<std::int32_t, 32> pos;
    const int before = index_of_raw(v, n, pos.data());
    kernel::apply(v, n, st.tmp.data(), st.stack.data());
    const int after = index_of_raw(st.tmp.data(), n, pos.data());
    ++st.checks;
    if (after < before)
      st.fails.add(perm_str(v, n), "index must not decrease",
                   std::to_string(before) + " -> " + std::to_string(after));
  });
}

void suite_claim47_leading(SuiteReport& rep, int max_n, int threads) {
  scan_lengths(rep, 1, max_n, threads, [](ScanState& st, const std::int32_t* v, int n) {
    if (v[0] != 1 && v[0] != n) return;
    const int k = sort_count_of(st, v, n);
    ++st.checks;
    if (k == 2) st.fails.add(perm_str(v, n), "sort-number != 2", "2");
  });
}

void suite_claim48_periodic(SuiteReport& rep, int max_n, int threads) {
  for (int n = 1; n <= max_n; ++n) {
    struct Counter {
      std::array<std::uint64_t, 32> by_lead{};
    };
    Counter totals;
    const auto items = detail::plan_items(n, 0);
    detail::scan_items<Counter>(
        n, items, threads, [] { return Counter{}; },
        [n](Counter& c, const std::int32_t* v) {
          if (!kernel::has_peak(v, n)) ++c.by_lead[static_cast<std::size_t>(v[0])];
        },
        [&](std::size_t, Counter&& c) {
          for (std::size_t i = 0; i < c.by_lead.size(); ++i) totals.by_lead[i] += c.by_lead[i];
        });
    for (int k = 1; k <= n; ++k) {
      // round(2^(k-2)) with halves rounded up: 1, 1, 2, 4, 8, ...
      const std::uint64_t expected = k == 1 ? 1 : (std::uint64_t{1} << (k - 2));
      const std::uint64_t got = totals.by_lead[static_cast<std::size_t>(k)];
      ++rep.checks;
      if (got != expected) {
        ++rep.failure_count;
        rep.failures.push_back({"n=" + std::to_string(n) + " leading=" + std::to_string(k),
                                std::to_string(expected) + " periodic points",
                                std::to_string(got)});
      }
    }
  }
}

void suite_prop45_nonunimodal(SuiteReport& rep, int max_n, int threads) {
  if (max_n < 4) throw DomainError("prop45-nonunimodal needs max_n >= 4");
  const auto expect = [&](int n, int k0, std::array<std::uint64_t, 3> want) {
    const auto hist = exhaustive_summary(n, threads).histogram;
    std::array<std::uint64_t, 3> got{hist.count(k0), hist.count(k0 + 1), hist.count(k0 + 2)};
    ++rep.checks;
    const bool dip = got[0] > got[1] && got[1] < got[2];
    if (got != want || !dip) {
      ++rep.failure_count;
      std::ostringstream o;
      o << "q(" << n << "," << k0 << "..)=" << got[0] << "," << got[1] << "," << got[2];
      rep.failures.push_back({"n=" + std::to_string(n),
                              "counts " + std::to_string(want[0]) + "," +
                                  std::to_string(want[1]) + "," + std::to_string(want[2]) +
                                  " with a dip",
                              o.str()});
    }
  };
  expect(4, 0, {8, 6, 7});
  if (max_n >= 7) expect(7, 2, {1046, 874, 939});
}

void suite_prop46_doubling(SuiteReport& rep, int max_n, int threads) {
  if (max_n < 2) throw DomainError("prop46-doubling needs max_n >= 2");
  // Histogram doubling q(n+1,k) >= 2 q(n,k).
  SortHistogram prev = exhaustive_summary(1, threads).histogram;
  for (int n = 2; n <= max_n; ++n) {
    SortHistogram cur = exhaustive_summary(n, threads).histogram;
    for (int k = 0; k <= prev.max_k(); ++k) {
      ++rep.checks;
      if (cur.count(k) < 2 * prev.count(k)) {
        ++rep.failure_count;
        rep.failures.push_back(
            {"n=" + std::to_string(n - 1) + " k=" + std::to_string(k),
             "q(n+1,k) >= " + std::to_string(2 * prev.count(k)), std::to_string(cur.count(k))});
      }
    }
    prev = std::move(cur);
  }
  // Both lifts preserve the sort-number.
  const int lift_max = std::min(max_n - 1, 8);
  scan_lengths(rep, 1, lift_max, threads, [](ScanState& st, const std::int32_t* v, int n) {
    const Permutation p = Permutation::unchecked(std::vector<std::int32_t>(v, v + n));
    const int base = sort_count_of(st, v, n);
    for (const auto order : {LiftOrder::OneTwo, LiftOrder::TwoOne}) {
      const Permutation up = lift(p, order);
      const int lifted = sort_number(up);
      ++st.checks;
      if (lifted != base)
        st.fails.add(up.str(), "sort-number " + std::to_string(base), std::to_string(lifted));
    }
  });
}

void suite_periodic_count(SuiteReport& rep, int max_n, int threads) {
  for (int n = 1; n <= max_n; ++n) {
    const auto got = count_periodic(n, threads);
    const std::uint64_t expected = std::uint64_t{1} << (n - 1);
    ++rep.checks;
    if (got.periodic != expected || got.visited != factorial(n)) {
      ++rep.failure_count;
      rep.failures.push_back({"n=" + std::to_string(n),
                              std::to_string(expected) + " periodic over " +
                                  std::to_string(factorial(n)) + " visited",
                              std::to_string(got.periodic) + " periodic over " +
                                  std::to_string(got.visited) + " visited"});
    }
  }
}

void suite_valley_reversal(SuiteReport& rep, int max_n, int /*threads*/) {
  for (int n = 1; n <= max_n; ++n) {
    // Valley permutations, built directly: each subset of {2..n} descends on
    // the left of 1, the rest ascend on the right.
    const std::uint64_t combos = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::vector<std::int32_t> v;
      v.reserve(static_cast<std::size_t>(n));
      for (std::int32_t x = n; x >= 2; --x)
        if (mask & (std::uint64_t{1} << (x - 2))) v.push_back(x);
      v.push_back(1);
      for (std::int32_t x = 2; x <= n; ++x)
        if (!(mask & (std::uint64_t{1} << (x - 2)))) v.push_back(x);

      const Permutation p = Permutation::unchecked(std::move(v));
      ++rep.checks;
      if (!is_periodic(p)) {
        ++rep.failure_count;
        if (rep.failures.size() < SuiteReport::kMaxStoredFailures)
          rep.failures.push_back({p.str(), "valley-shaped", "has a peak"});
        continue;
      }
      const Permutation image = apply_sc231(p);
      if (image != reverse(p)) {
        ++rep.failure_count;
        if (rep.failures.size() < SuiteReport::kMaxStoredFailures)
          rep.failures.push_back({p.str(), reverse(p).str(), image.str()});
      }
    }
  }
}

void suite_preimage_bound(SuiteReport& rep, int max_n, int threads) {
  for (int n = 2; n <= max_n; ++n) {
    const std::uint64_t total = factorial(n);
    std::vector<std::uint32_t> image_count(total, 0);
    const auto items = detail::plan_items(n, 0);

    struct Local {
      std::vector<std::uint64_t> ranks;
      std::vector<std::int32_t> image, stack;
      explicit Local(int n)
          : image(static_cast<std::size_t>(n)), stack(static_cast<std::size_t>(n)) {}
    };
    const auto lehmer_rank = [](const std::int32_t* v, int len) {
      std::uint64_t rank = 0;
      for (int i = 0; i < len; ++i) {
        std::uint64_t smaller_right = 0;
        for (int j = i + 1; j < len; ++j)
          if (v[j] < v[i]) ++smaller_right;
        rank += smaller_right * factorial(len - 1 - i);
      }
      return rank;
    };
    detail::scan_items<Local>(
        n, items, threads, [n] { return Local(n); },
        [n, &lehmer_rank](Local& loc, const std::int32_t* v) {
          kernel::apply(v, n, loc.image.data(), loc.stack.data());
          loc.ranks.push_back(lehmer_rank(loc.image.data(), n));
        },
        [&](std::size_t, Local&& loc) {
          for (const auto r : loc.ranks) ++image_count[r];
        });

    std::uint64_t max_count = 0;
    std::uint64_t sum = 0;
    for (const auto c : image_count) {
      max_count = std::max<std::uint64_t>(max_count, c);
      sum += c;
    }
    const std::uint64_t expected = std::uint64_t{1} << (n - 2);
    rep.checks += total + 2;
    if (max_count != expected) {
      ++rep.failure_count;
      rep.failures.push_back({"n=" + std::to_string(n),
                              "max preimage count " + std::to_string(expected),
                              std::to_string(max_count)});
    }
    if (sum != total) {
      ++rep.failure_count;
      rep.failures.push_back({"n=" + std::to_string(n),
                              "preimage counts sum to " + std::to_string(total),
                              std::to_string(sum)});
    }
  }
}

struct SuiteSpec {
  std::string_view name;
  int default_cap;  // largest max_n without force
  int forced_cap;   // largest max_n with force
  void (*fn)(SuiteReport&, int, int);
};

constexpr int kExhaustiveCap = 10;
constexpr int kExhaustiveForcedCap = 12;

const std::array<SuiteSpec, 12>& suite_table() {
  static const std::array<SuiteSpec, 12> table{{
      {"thm42-lower", 100, 100, suite_thm42_lower},
      {"thm43-upper", kExhaustiveCap, kExhaustiveForcedCap, suite_thm43_upper},
      {"lemma431-gap", kExhaustiveCap, kExhaustiveForcedCap, suite_lemma431_gap},
      {"cor432-index", kExhaustiveCap, kExhaustiveForcedCap, suite_cor432_index},
      {"index-monovariant", kExhaustiveCap, kExhaustiveForcedCap, suite_index_monovariant},
      {"claim47-leading", kExhaustiveCap, kExhaustiveForcedCap, suite_claim47_leading},
      {"claim48-periodic-by-leading", kExhaustiveCap, kExhaustiveForcedCap,
       suite_claim48_periodic},
      {"prop45-nonunimodal", kExhaustiveCap, kExhaustiveForcedCap, suite_prop45_nonunimodal},
      {"prop46-doubling", kExhaustiveCap, kExhaustiveForcedCap, suite_prop46_doubling},
      {"periodic-count", kExhaustiveCap, kExhaustiveForcedCap, suite_periodic_count},
      {"valley-reversal", kExhaustiveCap, kExhaustiveForcedCap, suite_valley_reversal},
      {"preimage-bound", 8, 8, suite_preimage_bound},
  }};
  return table;
}

}  // namespace

std::span<const std::string_view> suite_names() {
  static const std::array<std::string_view, 12> names = [] {
    std::array<std::string_view, 12> out{};
    for (std::size_t i = 0; i < suite_table().size(); ++i) out[i] = suite_table()[i].name;
    return out;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, int max_n, bool force, int threads) {
  for (const auto& spec : suite_table()) {
    if (spec.name != name) continue;
    if (max_n < 1) throw DomainError("max_n must be >= 1");
    const int cap = force ? spec.forced_cap : spec.default_cap;
    if (max_n > cap)
      throw DomainError(std::string(name) + " caps at max_n = " + std::to_string(cap) +
                        (force ? "" : " (12 with --force)"));
    SuiteReport rep;
    rep.suite = std::string(name);
    rep.max_n = max_n;
    rep.forced = force;
    const auto start = std::chrono::steady_clock::now();
    spec.fn(rep, max_n, threads);
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rep.checks == 0) throw DomainError(std::string(name) + " ran zero checks");
    return rep;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteReport> run_all_suites(int max_n, bool force, int threads,
                                        const std::function<void(const SuiteReport&)>& on_done) {
  std::vector<SuiteReport> out;
  for (const auto& spec : suite_table()) {
    const int cap = force ? spec.forced_cap : spec.default_cap;
    out.push_back(run_suite(spec.name, std::min(max_n, cap), force, threads));
    if (on_done) on_done(out.back());
  }
  return out;
}

std::string reports_to_json(std::span<const SuiteReport> reports, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool all_passed = true;
  for (const auto& r : reports) {
    nlohmann::ordered_json e;
    e["suite"] = r.suite;
    e["max_n"] = r.max_n;
    e["forced"] = r.forced;
    e["checks"] = r.checks;
    e["failure_count"] = r.failure_count;
    nlohmann::ordered_json fails = nlohmann::ordered_json::array();
    for (const auto& f : r.failures)
      fails.push_back({{"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
    e["failures"] = std::move(fails);
    e["passed"] = r.passed();
    all_passed = all_passed && r.passed();
    arr.push_back(std::move(e));
  }
  nlohmann::ordered_json obj;
  obj["reports"] = std::move(arr);
  obj["all_passed"] = all_passed;
  return obj.dump(indent) + "\n";
}

}  // namespace sc231
