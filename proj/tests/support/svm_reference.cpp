#include "svm_reference.hpp"

#include <algorithm>
#include <cmath>

namespace svm_reference {

Solution solve(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double C,
               int iterations) {
  const std::size_t n = x.size();
  std::vector<double> H(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 1.0;
      for (std::size_t k = 0; k < x[i].size(); ++k) dot += x[i][k] * x[j][k];
      H[i * n + j] = y[i] * y[j] * dot + (i == j ? 0.5 / C : 0.0);
    }
  }
  auto mul = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out[i] += H[i * n + j] * v[j];
    }
    return out;
  };

  // Largest eigenvalue by power iteration gives the gradient's Lipschitz
  // constant.
  std::vector<double> v(n, 1.0);
  double L = 1.0;
  for (int it = 0; it < 500; ++it) {
    auto hv = mul(v);
    double norm = 0.0;
    for (double e : hv) norm += e * e;
    norm = std::sqrt(norm);
    L = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = hv[i] / norm;
  }
  L *= 1.01;

  std::vector<double> alpha(n, 0.0), prev(n, 0.0), point(n, 0.0);
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    auto grad = mul(point);
    prev = alpha;
    for (std::size_t i = 0; i < n; ++i) alpha[i] = std::max(0.0, point[i] - (grad[i] - 1.0) / L);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < n; ++i) point[i] = alpha[i] + (t - 1.0) / t_next * (alpha[i] - prev[i]);
    t = t_next;
  }

  Solution s;
  s.w.assign(x.empty() ? 0 : x[0].size(), 0.0);
  double bias_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < s.w.size(); ++k) s.w[k] += alpha[i] * y[i] * x[i][k];
    bias_weight += alpha[i] * y[i];
  }
  s.b = -bias_weight;
  return s;
}

double primal(const std::vector<double>& w, double b, const std::vector<std::vector<double>>& x,
              const std::vector<int>& y, double C) {
  double obj = b * b;
  for (double e : w) obj += e * e;
  obj *= 0.5;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = -b;
    for (std::size_t k = 0; k < w.size(); ++k) f += w[k] * x[i][k];
    const double slack = std::max(0.0, 1.0 - y[i] * f);
    obj += C * slack * slack;
  }
  return obj;
}

}  // namespace svm_reference
