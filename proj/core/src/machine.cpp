#include "sc231/machine.hpp"

#include <algorithm>
#include <cstring>

namespace sc231 {

namespace kernel {

int sort_count(std::int32_t* buf, std::int32_t* tmp, std::int32_t* stack, int n) {
  const int cap = iteration_cap(n);
  int count = 0;
  std::int32_t* cur = buf;
  std::int32_t* nxt = tmp;
  while (has_peak(cur, n)) {
    if (count > cap)
      throw InternalBoundExceeded("still not periodic after " + std::to_string(count) +
                                  " passes at length " + std::to_string(n) +
                                  " (cap " + std::to_string(cap) + ")");
    apply(cur, n, nxt, stack);
    std::swap(cur, nxt);
    ++count;
  }
  if (cur != buf) std::memcpy(buf, cur, sizeof(std::int32_t) * static_cast<std::size_t>(n));
  return count;
}

}  // namespace kernel

Permutation apply_sc231(const Permutation& p) {
  const int n = p.size();
  std::vector<std::int32_t> out(static_cast<std::size_t>(n));
  std::vector<std::int32_t> stack(static_cast<std::size_t>(n));
  kernel::apply(p.values().data(), n, out.data(), stack.data());
  return Permutation::unchecked(std::move(out));
}

SortTrace sc231_trace(const Permutation& p) {
  const int n = p.size();
  std::vector<SortEvent> events;
  events.reserve(static_cast<std::size_t>(2 * n));
  std::vector<std::int32_t> stack;
  stack.reserve(static_cast<std::size_t>(n));
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const std::int32_t x = p[i];
    while (stack.size() >= 2 && stack[stack.size() - 2] < x && x < stack.back()) {
      out.push_back(stack.back());
      events.push_back({SortEvent::Kind::Pop, stack.back(), true});
      stack.pop_back();
    }
    stack.push_back(x);
    events.push_back({SortEvent::Kind::Push, x, false});
  }
  while (!stack.empty()) {
    out.push_back(stack.back());
    events.push_back({SortEvent::Kind::Pop, stack.back(), false});
    stack.pop_back();
  }
  return SortTrace{p, Permutation::unchecked(std::move(out)), std::move(events)};
}

std::vector<std::int32_t> SortTrace::pre_popped_values() const {
  std::vector<std::int32_t> out;
  for (const auto& e : events)
    if (e.kind == SortEvent::Kind::Pop && e.pre_popped) out.push_back(e.value);
  return out;
}

Trajectory trajectory(const Permutation& p) {
  const int cap = iteration_cap(p.size());
  Trajectory t;
  t.steps.push_back(p);
  while (!is_periodic(t.steps.back())) {
    if (static_cast<int>(t.steps.size()) - 1 > cap)
      throw InternalBoundExceeded("trajectory of " + p.str() + " exceeded " +
                                  std::to_string(cap + 1) + " passes");
    t.steps.push_back(apply_sc231(t.steps.back()));
  }
  return t;
}

int sort_number(const Permutation& p) {
  const int n = p.size();
  std::vector<std::int32_t> buf(p.values().begin(), p.values().end());
  std::vector<std::int32_t> tmp(static_cast<std::size_t>(n));
  std::vector<std::int32_t> stack(static_cast<std::size_t>(n));
  return kernel::sort_count(buf.data(), tmp.data(), stack.data(), n);
}

Permutation v_permutation(int n) {
  if (n < 1) throw DomainError("v_permutation needs n >= 1");
  std::vector<std::int32_t> v;
  v.reserve(static_cast<std::size_t>(n));
  // Values with n's parity ascending...
  for (std::int32_t x = (n % 2 == 0) ? 2 : 1; x <= n; x += 2) v.push_back(x);
  // ...then the rest descending; n-1 is the largest value of opposite parity.
  for (std::int32_t x = n - 1; x >= 1; x -= 2) v.push_back(x);
  return Permutation::unchecked(std::move(v));
}

Permutation lift(const Permutation& p, LiftOrder order) {
  std::vector<std::int32_t> v;
  v.reserve(static_cast<std::size_t>(p.size()) + 1);
  for (const auto x : p.values()) {
    if (x == 1) {
      if (order == LiftOrder::OneTwo) {
        v.push_back(1);
        v.push_back(2);
      } else {
        v.push_back(2);
        v.push_back(1);
      }
    } else {
      v.push_back(x + 1);
    }
  }
  return Permutation::unchecked(std::move(v));
}

Permutation contract(const Permutation& p) {
  if (index_of(p) < 2)
    throw IndexTooLow("cannot contract " + p.str() + ": values 1 and 2 are not adjacent");
  std::vector<std::int32_t> v;
  v.reserve(static_cast<std::size_t>(p.size()) - 1);
  for (const auto x : p.values()) {
    if (x == 2) continue;
    v.push_back(x == 1 ? 1 : x - 1);
  }
  return Permutation::unchecked(std::move(v));
}

}  // namespace sc231
