#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "sc231/enumerate.hpp"
#include "sc231/machine.hpp"
#include "sc231/sample.hpp"

namespace {

using namespace sc231;

std::vector<std::int32_t> fixed_random_values(int n) {
  RngState rng = RngState::stream(1234, static_cast<std::uint64_t>(n), 0);
  const Permutation p = random_perm(n, rng);
  return {p.values().begin(), p.values().end()};
}

void BM_apply_pass(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto input = fixed_random_values(n);
  std::vector<std::int32_t> out(input.size());
  std::vector<std::int32_t> stack(input.size());
  for (auto _ : state) {
    kernel::apply(input.data(), n, out.data(), stack.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_apply_pass)->Arg(8)->Arg(16)->Arg(64)->Arg(256)->Arg(1024);

void BM_sort_number(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto input = fixed_random_values(n);
  std::vector<std::int32_t> buf(input.size());
  std::vector<std::int32_t> tmp(input.size());
  std::vector<std::int32_t> stack(input.size());
  for (auto _ : state) {
    buf = input;
    const int k = kernel::sort_count(buf.data(), tmp.data(), stack.data(), n);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_sort_number)->Arg(8)->Arg(11)->Arg(64)->Arg(256);

void BM_random_perm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngState rng = RngState::from_seed(99);
  std::vector<std::int32_t> v(static_cast<std::size_t>(n));
  for (auto _ : state) {
    const Permutation p = random_perm(n, rng);
    benchmark::DoNotOptimize(p.values().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_random_perm)->Arg(16)->Arg(128)->Arg(1024);

void BM_next_perm_sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::vector<std::int32_t> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    std::uint64_t steps = 0;
    do {
      ++steps;
    } while (std::next_permutation(v.begin(), v.end()));
    benchmark::DoNotOptimize(steps);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(factorial(n)));
}
BENCHMARK(BM_next_perm_sweep)->Arg(8)->Arg(9);

void BM_exhaustive_summary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ExhaustiveResult r = exhaustive_summary(n, 0);
    benchmark::DoNotOptimize(r.summary.average);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(factorial(n)));
}
BENCHMARK(BM_exhaustive_summary)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
