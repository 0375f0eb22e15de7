#include "sc231/enumerate.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sc231/numfmt.hpp"
#include "scan_detail.hpp"

namespace sc231 {

std::uint64_t factorial(int n) {
  static constexpr std::array<std::uint64_t, 21> table = [] {
    std::array<std::uint64_t, 21> t{};
    t[0] = 1;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 20) throw DomainError("factorial(" + std::to_string(n) + ") outside uint64");
  return table[static_cast<std::size_t>(n)];
}

std::optional<Permutation> next_perm(const Permutation& p) {
  std::vector<std::int32_t> v(p.values().begin(), p.values().end());
  if (!std::next_permutation(v.begin(), v.end())) return std::nullopt;
  return Permutation::unchecked(std::move(v));
}

std::uint64_t rank_of(const Permutation& p) {
  const int n = p.size();
  if (n > 20) throw DomainError("rank_of limited to n <= 20");
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t smaller_right = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller_right;
    rank += smaller_right * factorial(n - 1 - i);
  }
  return rank;
}

namespace detail {

void unrank_into(int n, std::uint64_t rank, std::int32_t* buf) {
  std::vector<std::int32_t> avail(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) avail[static_cast<std::size_t>(i)] = i + 1;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = factorial(n - 1 - i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    buf[i] = avail[idx];
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
  }
}

std::vector<WorkItem> plan_items(int n, std::uint64_t start_rank) {
  const std::uint64_t total = factorial(n);
  std::vector<WorkItem> items;
  if (start_rank >= total) return items;

  const int depth = default_scan_depth(n);
  const std::uint64_t block = factorial(n - depth);
  std::uint64_t pos = start_rank;
  while (pos < total) {
    const std::uint64_t block_end = (pos / block + 1) * block;
    items.push_back({pos, std::min(block_end, total) - pos});
    pos = block_end;
  }
  return items;
}

}  // namespace detail

Permutation nth_permutation(int n, std::uint64_t rank) {
  if (n < 1) throw DomainError("nth_permutation needs n >= 1");
  if (rank >= factorial(n)) throw DomainError("rank out of range for S_" + std::to_string(n));
  std::vector<std::int32_t> v(static_cast<std::size_t>(n));
  detail::unrank_into(n, rank, v.data());
  return Permutation::unchecked(std::move(v));
}

std::vector<PrefixBlock> prefix_partition(int n, int depth) {
  if (n < 1) throw DomainError("prefix_partition needs n >= 1");
  if (depth < 1 || depth > std::min(n, 3))
    throw DomainError("depth must be in 1..min(n,3)");
  const std::uint64_t block = factorial(n - depth);
  const std::uint64_t blocks = factorial(n) / block;
  std::vector<PrefixBlock> out;
  out.reserve(static_cast<std::size_t>(blocks));
  for (std::uint64_t b = 0; b < blocks; ++b)
    out.push_back({nth_permutation(n, b * block), block});
  return out;
}

SortHistogram::SortHistogram(int n) : n_(n) {
  if (n < 1) throw DomainError("histogram needs n >= 1");
  counts_.assign(kDefaultBuckets, 0);
}

std::uint64_t SortHistogram::count(int k) const {
  if (k < 0) throw DomainError("negative sort-number");
  return static_cast<std::size_t>(k) < counts_.size() ? counts_[static_cast<std::size_t>(k)] : 0;
}

void SortHistogram::add(int k, std::uint64_t c) {
  if (k < 0) throw DomainError("negative sort-number");
  if (static_cast<std::size_t>(k) >= counts_.size()) counts_.resize(static_cast<std::size_t>(k) + 1, 0);
  counts_[static_cast<std::size_t>(k)] += c;
}

int SortHistogram::max_k() const {
  for (int k = static_cast<int>(counts_.size()) - 1; k >= 0; --k)
    if (counts_[static_cast<std::size_t>(k)] > 0) return k;
  return -1;
}

std::uint64_t SortHistogram::total() const {
  std::uint64_t t = 0;
  for (const auto c : counts_) t += c;
  return t;
}

std::uint64_t SortHistogram::weighted_sum() const {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) s += k * counts_[k];
  return s;
}

void SortHistogram::merge_from(const SortHistogram& other) {
  if (other.n_ != n_)
    throw DomainError("histogram length mismatch: " + std::to_string(n_) + " vs " +
                      std::to_string(other.n_));
  if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
}

SortHistogram histogram_merge(const SortHistogram& a, const SortHistogram& b) {
  SortHistogram out = a;
  out.merge_from(b);
  return out;
}

bool operator==(const SortHistogram& a, const SortHistogram& b) {
  if (a.n_ != b.n_) return false;
  const std::size_t common = std::min(a.counts_.size(), b.counts_.size());
  for (std::size_t k = 0; k < common; ++k)
    if (a.counts_[k] != b.counts_[k]) return false;
  for (std::size_t k = common; k < a.counts_.size(); ++k)
    if (a.counts_[k] != 0) return false;
  for (std::size_t k = common; k < b.counts_.size(); ++k)
    if (b.counts_[k] != 0) return false;
  return true;
}

LengthSummary LengthSummary::from(const SortHistogram& h) {
  const std::uint64_t total = h.total();
  if (total == 0) throw DomainError("empty histogram has no summary");
  LengthSummary s;
  s.n = h.n();
  s.max_sort_number = h.max_k();
  s.count_at_max = h.count(s.max_sort_number);
  s.sum_of_sort_numbers = h.weighted_sum();
  s.average = static_cast<double>(s.sum_of_sort_numbers) / static_cast<double>(total);
  return s;
}

const SortHistogram& LeadingEntrySummary::histogram_for(int lead) const {
  if (lead < 1 || lead > n) throw DomainError("leading entry out of range");
  return per_leading[static_cast<std::size_t>(lead - 1)];
}

LengthSummary LeadingEntrySummary::summary_for(int lead) const {
  return LengthSummary::from(histogram_for(lead));
}

Permutation ScanCheckpoint::next_permutation() const {
  if (complete()) throw DomainError("scan is complete; no next permutation");
  return nth_permutation(n, next_rank);
}

namespace {

struct BlockAccum {
  std::vector<std::uint64_t> hist;
  std::vector<std::int32_t> work, tmp, stack;

  explicit BlockAccum(int n)
      : hist(SortHistogram::kDefaultBuckets, 0),
        work(static_cast<std::size_t>(n)),
        tmp(static_cast<std::size_t>(n)),
        stack(static_cast<std::size_t>(n)) {}
};

}  // namespace

ExhaustiveResult exhaustive_summary(int n, int threads) {
  ScanOptions opts;
  opts.threads = threads;
  return exhaustive_summary(n, opts);
}

ExhaustiveResult exhaustive_summary(int n, const ScanOptions& options) {
  if (n < 1 || n > 20) throw DomainError("exhaustive scans support 1 <= n <= 20");

  std::vector<SortHistogram> leading;
  std::uint64_t start_rank = 0;
  if (options.resume) {
    if (options.resume->n != n)
      throw DomainError("checkpoint is for length " + std::to_string(options.resume->n));
    if (options.resume->per_leading.size() != static_cast<std::size_t>(n))
      throw DomainError("checkpoint is missing leading-entry rows");
    leading = options.resume->per_leading;
    start_rank = options.resume->next_rank;
  } else {
    leading.assign(static_cast<std::size_t>(n), SortHistogram(n));
  }

  const auto items = detail::plan_items(n, start_rank);
  std::uint64_t blocks_since_checkpoint = 0;

  detail::scan_items<BlockAccum>(
      n, items, options.threads,
      [n] { return BlockAccum(n); },
      [n](BlockAccum& acc, const std::int32_t* values) {
        std::copy(values, values + n, acc.work.begin());
        const int k =
            kernel::sort_count(acc.work.data(), acc.tmp.data(), acc.stack.data(), n);
        if (static_cast<std::size_t>(k) >= acc.hist.size())
          acc.hist.resize(static_cast<std::size_t>(k) + 1, 0);
        ++acc.hist[static_cast<std::size_t>(k)];
      },
      [&](std::size_t i, BlockAccum&& acc) {
        // Every permutation of an item shares its first value.
        std::int32_t lead_value[21];
        detail::unrank_into(n, items[i].start_rank, lead_value);
        auto& h = leading[static_cast<std::size_t>(lead_value[0] - 1)];
        for (std::size_t k = 0; k < acc.hist.size(); ++k)
          if (acc.hist[k]) h.add(static_cast<int>(k), acc.hist[k]);

        if (options.on_checkpoint) {
          ++blocks_since_checkpoint;
          const std::uint64_t done_rank = items[i].start_rank + items[i].count;
          const bool last = (i + 1 == items.size());
          if (!last && blocks_since_checkpoint >= std::max<std::uint64_t>(
                                                      1, options.checkpoint_every_blocks)) {
            blocks_since_checkpoint = 0;
            options.on_checkpoint(ScanCheckpoint{n, done_rank, leading});
          }
        }
      });

  SortHistogram global(n);
  for (const auto& h : leading) global.merge_from(h);

  ExhaustiveResult result{global, LengthSummary::from(global),
                          LeadingEntrySummary{n, std::move(leading)}};
  return result;
}

PeriodicCount count_periodic(int n, int threads) {
  if (n < 1 || n > 20) throw DomainError("count_periodic supports 1 <= n <= 20");
  const auto items = detail::plan_items(n, 0);
  PeriodicCount total;
  detail::scan_items<PeriodicCount>(
      n, items, threads, [] { return PeriodicCount{}; },
      [n](PeriodicCount& acc, const std::int32_t* values) {
        if (!kernel::has_peak(values, n)) ++acc.periodic;
        ++acc.visited;
      },
      [&](std::size_t, PeriodicCount&& acc) {
        total.periodic += acc.periodic;
        total.visited += acc.visited;
      });
  return total;
}

void save_checkpoint(const ScanCheckpoint& cp, const std::string& path) {
  if (cp.complete()) throw DomainError("refusing to checkpoint a completed scan");
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw Error("cannot write checkpoint file " + tmp);
    const Permutation next = cp.next_permutation();
    // Always the comma form, regardless of length.
    const auto vals = next.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) os << ',';
      os << vals[i];
    }
    os << '\n';
    for (std::size_t lead = 0; lead < cp.per_leading.size(); ++lead) {
      const auto& counts = cp.per_leading[lead].counts();
      for (std::size_t k = 0; k < counts.size(); ++k)
        if (counts[k]) os << (lead + 1) << ',' << k << ',' << counts[k] << '\n';
    }
    if (!os) throw Error("short write to checkpoint file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<ScanCheckpoint> load_checkpoint(const std::string& path) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::string line;
  if (!std::getline(is, line)) throw Error("checkpoint file " + path + " is empty");

  const Permutation next = Permutation::parse(line);
  ScanCheckpoint cp;
  cp.n = next.size();
  cp.next_rank = rank_of(next);
  cp.per_leading.assign(static_cast<std::size_t>(cp.n), SortHistogram(cp.n));
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    if (fields.size() != 3) throw Error("bad checkpoint row: " + line);
    const auto lead = parse_int(fields[0]);
    const auto k = parse_int(fields[1]);
    const auto count = parse_int(fields[2]);
    if (lead < 1 || lead > cp.n) throw Error("bad leading entry in checkpoint row: " + line);
    cp.per_leading[static_cast<std::size_t>(lead - 1)].add(static_cast<int>(k),
                                                           static_cast<std::uint64_t>(count));
  }
  return cp;
}

void emit_histogram_csv(const SortHistogram& h, std::ostream& os) {
  os << "n,k,count\n";
  for (int k = 0; k <= h.max_k(); ++k)
    if (h.count(k)) os << h.n() << ',' << k << ',' << h.count(k) << '\n';
}

namespace {

nlohmann::ordered_json histogram_json(const SortHistogram& h) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (int k = 0; k <= h.max_k(); ++k)
    if (h.count(k)) obj[std::to_string(k)] = h.count(k);
  return obj;
}

nlohmann::ordered_json summary_json(const LengthSummary& s, const SortHistogram& h) {
  nlohmann::ordered_json obj;
  obj["n"] = s.n;
  obj["max"] = s.max_sort_number;
  obj["count_at_max"] = s.count_at_max;
  obj["sum"] = s.sum_of_sort_numbers;
  obj["average"] = s.average;
  obj["histogram"] = histogram_json(h);
  return obj;
}

}  // namespace

std::string exhaustive_to_json(const ExhaustiveResult& r, int indent) {
  nlohmann::ordered_json obj = summary_json(r.summary, r.histogram);
  nlohmann::ordered_json leading = nlohmann::ordered_json::object();
  for (int lead = 1; lead <= r.leading.n; ++lead) {
    const auto& h = r.leading.histogram_for(lead);
    leading[std::to_string(lead)] = summary_json(r.leading.summary_for(lead), h);
  }
  obj["leading"] = std::move(leading);
  return obj.dump(indent) + "\n";
}

}  // namespace sc231
