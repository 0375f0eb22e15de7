#pragma once

#include <cstdint>
#include <vector>

#include "sc231/errors.hpp"
#include "sc231/permutation.hpp"

namespace sc231 {

struct SortEvent {
  enum class Kind : std::uint8_t { Push, Pop };
  Kind kind;
  std::int32_t value;
  /// Pops only: true iff the pop happened while input entries remained
  /// unconsumed (a pre-pop). Pops during the final drain are post-pops.
  bool pre_popped;
};

/// Full push/pop log of one machine pass.
struct SortTrace {
  Permutation input;
  Permutation output;
  std::vector<SortEvent> events;

  std::vector<std::int32_t> pre_popped_values() const;
};

/// steps[0] is the input, steps[t] the t-th image, steps.back() the first
/// periodic point reached.
struct Trajectory {
  std::vector<Permutation> steps;

  int sort_number() const noexcept { return static_cast<int>(steps.size()) - 1; }
  const Permutation& final_step() const { return steps.back(); }
};

/// Proven ceiling on sort-numbers: (n+1)(n-2)/2 for n >= 3, 0 below. The sort
/// loop aborts with InternalBoundExceeded once it would pass cap+1 iterations.
constexpr int iteration_cap(int n) noexcept {
  return n >= 3 ? (n + 1) * (n - 2) / 2 : 0;
}

/// One pass of the consecutive-231-avoiding stack: scan left to right, pop
/// while the would-be top three stack entries read top-to-bottom as a
/// consecutive 231 pattern (second < incoming < top), push, then drain.
Permutation apply_sc231(const Permutation& p);

SortTrace sc231_trace(const Permutation& p);

/// Applies sc231 until the result is periodic, keeping every step.
Trajectory trajectory(const Permutation& p);

/// Iteration count only; cheaper than trajectory() when the steps are not
/// needed.
int sort_number(const Permutation& p);

/// V_n: the values sharing n's parity in increasing order, then the values
/// sharing (n-1)'s parity in decreasing order. V_3 = 132, V_6 = 246531.
/// reverse(V_n) needs at least n-1 passes to sort.
Permutation v_permutation(int n);

enum class LiftOrder { OneTwo, TwoOne };

/// Adds 1 to every value, then replaces the entry 2 by "1 2" or "2 1".
/// Preserves the sort-number; contract() undoes it.
Permutation lift(const Permutation& p, LiftOrder order);

/// Collapses the contiguous {1,2} block to a single 1 and shifts the other
/// values down. Throws IndexTooLow when index_of(p) == 1.
Permutation contract(const Permutation& p);

namespace kernel {

/// Allocation-free machine pass. out and stack must each hold n entries;
/// out receives the image, stack is scratch.
inline void apply(const std::int32_t* in, int n, std::int32_t* out,
                  std::int32_t* stack) noexcept {
  int top = -1;
  int o = 0;
  for (int i = 0; i < n; ++i) {
    const std::int32_t x = in[i];
    while (top >= 1 && stack[top - 1] < x && x < stack[top]) out[o++] = stack[top--];
    stack[++top] = x;
  }
  while (top >= 0) out[o++] = stack[top--];
}

inline bool has_peak(const std::int32_t* v, int n) noexcept {
  for (int i = 1; i + 1 < n; ++i)
    if (v[i - 1] < v[i] && v[i] > v[i + 1]) return true;
  return false;
}

/// In-place sort-number; buf ends up holding the periodic point. tmp and
/// stack are n-entry scratch buffers.
int sort_count(std::int32_t* buf, std::int32_t* tmp, std::int32_t* stack, int n);

}  // namespace kernel
}  // namespace sc231
