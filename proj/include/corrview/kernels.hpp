#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel kernels shared by the samplers, the feature builder and the
// grouping step. Each kernel has an OpenMP version (namespace kernels) and a
// plain serial version (namespace kernels::serial) kept as the reference the
// tests and the benchmark compare against.
//
// The OpenMP versions write per-group partial results and reduce them in
// group order, so their output does not depend on the thread count.

namespace corrview::kernels {

// Row-major view over an integer count table.
struct CountGrid {
  std::span<const std::int32_t> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::int32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class Axis { kRows, kColumns };

// Sum over groups (rows or columns of the grid) of the log normalizer ratio
// of a symmetric Dirichlet-multinomial:
//   lgamma(K a) - lgamma(n_g + K a) + sum_k [lgamma(c_gk + a) - lgamma(a)]
// where K is the group length and n_g the group total.
double dirichlet_multinomial_log_norm(const CountGrid& grid, Axis groups, double prior);

// out[r, c] = grid[r, c] / sum_c grid[r, c]; all-zero rows stay zero.
void row_fractions(const CountGrid& grid, std::span<double> out);

// out[r, c] = grid[r, c] / sum_r grid[r, c]; all-zero columns stay zero.
void column_fractions(const CountGrid& grid, std::span<double> out);

namespace serial {
double dirichlet_multinomial_log_norm(const CountGrid& grid, Axis groups, double prior);
void row_fractions(const CountGrid& grid, std::span<double> out);
void column_fractions(const CountGrid& grid, std::span<double> out);
}  // namespace serial

}  // namespace corrview::kernels
