#include "sc231/sample.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sc231/machine.hpp"
#include "sc231/numfmt.hpp"
#include "scan_detail.hpp"

namespace sc231 {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngState RngState::from_seed(std::uint64_t seed) { return RngState{mix64(seed + kGolden)}; }

RngState RngState::stream(std::uint64_t seed, std::uint64_t key1, std::uint64_t key2) {
  std::uint64_t s = mix64(seed + kGolden);
  s = mix64(s ^ (key1 + kGolden));
  s = mix64(s ^ (key2 + kGolden));
  return RngState{s};
}

std::uint64_t RngState::next() {
  state += kGolden;
  return mix64(state);
}

std::uint64_t RngState::bounded(std::uint64_t bound) {
  if (bound == 0) throw DomainError("bounded(0)");
  // Reject draws below 2^64 mod bound so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

namespace {

void random_perm_into(std::int32_t* v, int n, RngState& rng) {
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  for (int i = n - 1; i >= 1; --i) {
    const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(v[i], v[j]);
  }
}

}  // namespace

Permutation random_perm(int n, RngState& rng) {
  if (n < 1) throw DomainError("random_perm needs n >= 1");
  std::vector<std::int32_t> v(static_cast<std::size_t>(n));
  random_perm_into(v.data(), n, rng);
  return Permutation::unchecked(std::move(v));
}

MeanSd mean_sd(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("mean_sd of empty sequence");
  double sum = 0;
  for (const double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, std::numeric_limits<double>::quiet_NaN()};
  double ss = 0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

namespace {

// Continued fraction for the regularized incomplete beta (Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1;
  const double qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < kEps) break;
  }
  return h;
}

double ibeta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
  return 1 - front * betacf(b, a, 1 - x) / b;
}

}  // namespace

double student_t_cdf(double t, double df) {
  if (df < 1) throw DomainError("student_t_cdf needs df >= 1");
  const double x = df / (df + t * t);
  const double tail = 0.5 * ibeta(0.5 * df, 0.5, x);
  return t >= 0 ? 1 - tail : tail;
}

double t_quantile(double prob, std::int64_t df) {
  if (df < 1) throw DomainError("t_quantile needs df >= 1");
  if (!(prob > 0 && prob < 1)) throw DomainError("t_quantile needs prob in (0,1)");
  if (prob == 0.5) return 0;
  if (prob < 0.5) return -t_quantile(1 - prob, df);

  const auto nu = static_cast<double>(df);
  double lo = 0;
  double hi = 1;
  while (student_t_cdf(hi, nu) < prob) {
    lo = hi;
    hi *= 2;
    if (hi > 1e300) break;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, lo); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, nu) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Interval confidence_interval(double mean, double sd, std::int64_t m, double level) {
  if (m < 2) throw DomainError("confidence interval needs m >= 2");
  if (!(level > 0 && level < 1)) throw DomainError("level must be in (0,1)");
  if (sd < 0) throw DomainError("negative standard deviation");
  const double half =
      t_quantile(0.5 * (1 + level), m - 1) * sd / std::sqrt(static_cast<double>(m));
  return {mean - half, mean + half};
}

SampleRun sample_stats(int n, std::int64_t m, std::uint64_t seed, double level, int threads) {
  if (n < 1) throw DomainError("sample_stats needs n >= 1");
  if (m < 2) throw DomainError("sample_stats needs m >= 2");
  if (!(level > 0 && level < 1)) throw DomainError("level must be in (0,1)");

  std::vector<std::int32_t> xs(static_cast<std::size_t>(m));
  const int workers = std::min<std::int64_t>(detail::resolve_threads(threads), m);

  std::atomic<std::int64_t> cursor{0};
  constexpr std::int64_t kGrain = 32;
  std::mutex error_mu;
  std::exception_ptr first_error;
  auto work = [&] {
    std::vector<std::int32_t> buf(static_cast<std::size_t>(n));
    std::vector<std::int32_t> tmp(static_cast<std::size_t>(n));
    std::vector<std::int32_t> stack(static_cast<std::size_t>(n));
    try {
      for (;;) {
        const std::int64_t begin = cursor.fetch_add(kGrain);
        if (begin >= m) return;
        const std::int64_t end = std::min(begin + kGrain, m);
        for (std::int64_t i = begin; i < end; ++i) {
          RngState rng = RngState::stream(seed, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(i));
          random_perm_into(buf.data(), n, rng);
          xs[static_cast<std::size_t>(i)] =
              kernel::sort_count(buf.data(), tmp.data(), stack.data(), n);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(error_mu);
      if (!first_error) first_error = std::current_exception();
      cursor.store(m);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<double> values(xs.begin(), xs.end());
  const MeanSd ms = mean_sd(values);
  const Interval ci = confidence_interval(ms.mean, ms.sd, m, level);
  return SampleRun{SampleStats{n, m, ms.mean, ms.sd, ci.low, ci.high, level, seed},
                   std::move(xs)};
}

void emit_sample_grid(std::span<const SampleRun> runs, std::ostream& os) {
  const auto row = [&](auto&& cell) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (i) os << ' ';
      cell(runs[i]);
    }
    os << '\n';
  };
  row([&](const SampleRun& r) { os << r.stats.n; });
  row([&](const SampleRun& r) { os << format_double(r.stats.mean); });
  row([&](const SampleRun& r) { os << format_double(r.stats.sd); });
  row([&](const SampleRun& r) { os << format_double(r.stats.ci_low); });
  row([&](const SampleRun& r) { os << format_double(r.stats.ci_high); });

  std::size_t max_m = 0;
  for (const auto& r : runs) max_m = std::max(max_m, r.sort_numbers.size());
  for (std::size_t i = 0; i < max_m; ++i) {
    for (std::size_t c = 0; c < runs.size(); ++c) {
      if (c) os << ' ';
      if (i < runs[c].sort_numbers.size()) os << runs[c].sort_numbers[i];
    }
    os << '\n';
  }
}

std::string sample_to_json(std::span<const SampleRun> runs, int indent) {
  nlohmann::ordered_json obj;
  obj["seed"] = runs.empty() ? 0 : runs.front().stats.seed;
  obj["level"] = runs.empty() ? 0.0 : runs.front().stats.level;
  obj["samples"] = runs.empty() ? 0 : runs.front().stats.m;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    nlohmann::ordered_json e;
    e["n"] = r.stats.n;
    e["m"] = r.stats.m;
    e["mean"] = r.stats.mean;
    e["sd"] = r.stats.sd;
    e["ci_low"] = r.stats.ci_low;
    e["ci_high"] = r.stats.ci_high;
    e["sort_numbers"] = r.sort_numbers;
    arr.push_back(std::move(e));
  }
  obj["runs"] = std::move(arr);
  return obj.dump(indent) + "\n";
}

}  // namespace sc231
