// Serial vs OpenMP kernels on count tables shaped like a word-topic matrix.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "corrview/kernels.hpp"

namespace {

using corrview::kernels::Axis;
using corrview::kernels::CountGrid;

std::vector<std::int32_t> random_counts(std::size_t n) {
  std::mt19937_64 gen(42);
  std::geometric_distribution<std::int32_t> dist(0.3);
  std::vector<std::int32_t> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

// Arg(0) = rows (vocabulary), Arg(1) = columns (topics).
template <bool Parallel>
void BM_LogNorm(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  const auto data = random_counts(rows * cols);
  const CountGrid grid{data, rows, cols};
  for (auto _ : state) {
    double v = Parallel ? corrview::kernels::dirichlet_multinomial_log_norm(grid, Axis::kColumns, 0.01)
                        : corrview::kernels::serial::dirichlet_multinomial_log_norm(grid, Axis::kColumns, 0.01);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

template <bool Parallel>
void BM_ColumnFractions(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  const auto data = random_counts(rows * cols);
  const CountGrid grid{data, rows, cols};
  std::vector<double> out(rows * cols);
  for (auto _ : state) {
    if (Parallel) {
      corrview::kernels::column_fractions(grid, out);
    } else {
      corrview::kernels::serial::column_fractions(grid, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

template <bool Parallel>
void BM_RowFractions(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  const auto data = random_counts(rows * cols);
  const CountGrid grid{data, rows, cols};
  std::vector<double> out(rows * cols);
  for (auto _ : state) {
    if (Parallel) {
      corrview::kernels::row_fractions(grid, out);
    } else {
      corrview::kernels::serial::row_fractions(grid, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

void Shapes(benchmark::internal::Benchmark* b) {
  b->Args({2000, 20})->Args({20000, 50})->Args({50000, 100});
}

BENCHMARK_TEMPLATE(BM_LogNorm, false)->Apply(Shapes);
BENCHMARK_TEMPLATE(BM_LogNorm, true)->Apply(Shapes);
BENCHMARK_TEMPLATE(BM_ColumnFractions, false)->Apply(Shapes);
BENCHMARK_TEMPLATE(BM_ColumnFractions, true)->Apply(Shapes);
BENCHMARK_TEMPLATE(BM_RowFractions, false)->Apply(Shapes);
BENCHMARK_TEMPLATE(BM_RowFractions, true)->Apply(Shapes);

}  // namespace

BENCHMARK_MAIN();
