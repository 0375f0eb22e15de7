#pragma once

// Private header: dynamic-block parallel sweep over contiguous lexicographic
// ranges of S_n, with results absorbed on the calling thread in block order.
// Shared by the exhaustive scanner and the verification suites.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "sc231/enumerate.hpp"

namespace sc231::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline int default_scan_depth(int n) { return n >= 10 ? 2 : 1; }

struct WorkItem {
  std::uint64_t start_rank;
  std::uint64_t count;
};

/// Fills buf with the rank-th permutation of S_n (lexicographic, 0-based).
void unrank_into(int n, std::uint64_t rank, std::int32_t* buf);

/// Work items covering ranks [start_rank, n!) using the default block depth.
/// Item boundaries are block boundaries except possibly the first item, which
/// may start mid-block when resuming.
std::vector<WorkItem> plan_items(int n, std::uint64_t start_rank);

/// visit(local, values) runs for every permutation of every item, lexical
/// order within an item; absorb(item_index, local) runs on the calling thread
/// in ascending item order. Exceptions from visit propagate.
template <typename Local, typename MakeLocal, typename Visit, typename Absorb>
void scan_items(int n, const std::vector<WorkItem>& items, int threads,
                MakeLocal make_local, Visit visit, Absorb absorb) {
  threads = resolve_threads(threads);

  auto run_item = [&](const WorkItem& item, Local& local, std::vector<std::int32_t>& buf) {
    unrank_into(n, item.start_rank, buf.data());
    for (std::uint64_t c = 0; c < item.count; ++c) {
      visit(local, buf.data());
      if (c + 1 < item.count) std::next_permutation(buf.begin(), buf.end());
    }
  };

  if (threads == 1 || items.size() <= 1) {
    std::vector<std::int32_t> buf(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < items.size(); ++i) {
      Local local = make_local();
      run_item(items[i], local, buf);
      absorb(i, std::move(local));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::vector<std::optional<Local>> slots(items.size());
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr first_error;

  auto worker = [&] {
    std::vector<std::int32_t> buf(static_cast<std::size_t>(n));
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items.size() || stop.load()) return;
        Local local = make_local();
        run_item(items[i], local, buf);
        {
          std::lock_guard<std::mutex> lk(mu);
          slots[i].emplace(std::move(local));
        }
        cv.notify_all();
      }
    } catch (...) {
      {
        std::lock_guard<std::mutex> lk(mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);

  try {
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::unique_lock<std::mutex> lk(mu);
      cv.wait(lk, [&] { return slots[i].has_value() || first_error; });
      if (first_error) break;
      Local local = std::move(*slots[i]);
      slots[i].reset();
      lk.unlock();
      absorb(i, std::move(local));
    }
  } catch (...) {
    std::lock_guard<std::mutex> lk(mu);
    if (!first_error) first_error = std::current_exception();
    stop.store(true);
  }

  stop.store(true);
  next.store(items.size());
  cv.notify_all();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sc231::detail
