#include "corrview/kernels.hpp"

#include <cmath>
#include <vector>

#include <omp.h>

#include "corrview/errors.hpp"

namespace corrview::kernels {
namespace {

// glibc's lgamma writes the global signgam; the reentrant form is used inside
// parallel regions.
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

void check_output(const CountGrid& grid, std::span<double> out) {
  if (out.size() != grid.rows * grid.cols) {
    throw ParameterError("kernel output size does not match the count grid");
  }
}

}  // namespace

double dirichlet_multinomial_log_norm(const CountGrid& grid, Axis groups, double prior) {
  const bool by_row = groups == Axis::kRows;
  const auto n_groups = static_cast<std::int64_t>(by_row ? grid.rows : grid.cols);
  const std::size_t len = by_row ? grid.cols : grid.rows;
  const double lg_prior = log_gamma(prior);
  const double lg_total_prior = log_gamma(static_cast<double>(len) * prior);

  std::vector<double> partial(static_cast<std::size_t>(n_groups), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < n_groups; ++g) {
    double acc = 0.0;
    long total = 0;
    for (std::size_t k = 0; k < len; ++k) {
      const std::int32_t c = by_row ? grid.at(static_cast<std::size_t>(g), k)
                                    : grid.at(k, static_cast<std::size_t>(g));
      total += c;
      if (c != 0) acc += log_gamma(c + prior) - lg_prior;
    }
    acc += lg_total_prior - log_gamma(static_cast<double>(total) + static_cast<double>(len) * prior);
    partial[static_cast<std::size_t>(g)] = acc;
  }

  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

void row_fractions(const CountGrid& grid, std::span<double> out) {
  check_output(grid, out);
  const auto rows = static_cast<std::int64_t>(grid.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * grid.cols;
    long total = 0;
    for (std::size_t c = 0; c < grid.cols; ++c) total += grid.data[base + c];
    for (std::size_t c = 0; c < grid.cols; ++c) {
      out[base + c] = total > 0 ? static_cast<double>(grid.data[base + c]) / total : 0.0;
    }
  }
}

void column_fractions(const CountGrid& grid, std::span<double> out) {
  check_output(grid, out);
  const auto cols = static_cast<std::int64_t>(grid.cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < cols; ++c) {
    const auto col = static_cast<std::size_t>(c);
    long total = 0;
    for (std::size_t r = 0; r < grid.rows; ++r) total += grid.at(r, col);
    for (std::size_t r = 0; r < grid.rows; ++r) {
      out[r * grid.cols + col] = total > 0 ? static_cast<double>(grid.at(r, col)) / total : 0.0;
    }
  }
}

namespace serial {

double dirichlet_multinomial_log_norm(const CountGrid& grid, Axis groups, double prior) {
  const bool by_row = groups == Axis::kRows;
  const std::size_t n_groups = by_row ? grid.rows : grid.cols;
  const std::size_t len = by_row ? grid.cols : grid.rows;
  const double k_prior = static_cast<double>(len) * prior;

  double sum = 0.0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    double total = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      const double c = by_row ? grid.at(g, k) : grid.at(k, g);
      total += c;
      sum += std::lgamma(c + prior) - std::lgamma(prior);
    }
    sum += std::lgamma(k_prior) - std::lgamma(total + k_prior);
  }
  return sum;
}

void row_fractions(const CountGrid& grid, std::span<double> out) {
  check_output(grid, out);
  for (std::size_t r = 0; r < grid.rows; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < grid.cols; ++c) total += grid.at(r, c);
    for (std::size_t c = 0; c < grid.cols; ++c) {
      out[r * grid.cols + c] = total > 0 ? grid.at(r, c) / total : 0.0;
    }
  }
}

void column_fractions(const CountGrid& grid, std::span<double> out) {
  check_output(grid, out);
  for (std::size_t c = 0; c < grid.cols; ++c) {
    double total = 0.0;
    for (std::size_t r = 0; r < grid.rows; ++r) total += grid.at(r, c);
    for (std::size_t r = 0; r < grid.rows; ++r) {
      out[r * grid.cols + c] = total > 0 ? grid.at(r, c) / total : 0.0;
    }
  }
}

}  // namespace serial
}  // namespace corrview::kernels
