#include "corrview/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>

#include "corrview/errors.hpp"
#include "corrview/rng.hpp"

namespace corrview {
namespace {

void validate_training_data(const Matrix& X, std::span<const int> y) {
  if (X.rows != y.size()) throw ParameterError("feature rows and labels differ in length");
  if (X.rows == 0) throw TrainingError("no training examples");
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) {
      pos = true;
    } else if (label == -1) {
      neg = true;
    } else {
      throw ValidationError("labels must be -1 or +1");
    }
  }
  if (!pos || !neg) throw TrainingError("training data must contain both labels");
  for (double v : X.data) {
    if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
  }
}

// Score of the augmented weight vector [w, v] on row i: w.x_i + v.
double augmented_score(const std::vector<double>& wv, const Matrix& X, std::size_t i) {
  const std::size_t d = X.cols;
  double s = wv[d];
  for (std::size_t j = 0; j < d; ++j) s += wv[j] * X(i, j);
  return s;
}

std::vector<double> augmented_weights(const SvmModel& m) {
  std::vector<double> wv = m.w;
  wv.push_back(-m.b);
  return wv;
}

}  // namespace

SvmModel train_svm(const Matrix& X, std::span<const int> y, const SvmConfig& config) {
  if (!(config.C > 0.0) || !std::isfinite(config.C)) throw ParameterError("C must be positive");
  if (!(config.tol > 0.0)) throw ParameterError("tolerance must be positive");
  if (config.max_iter < 1) throw ParameterError("max_iter must be >= 1");
  validate_training_data(X, y);

  const std::size_t n = X.rows;
  const std::size_t d = X.cols;
  const double diag = 1.0 / (2.0 * config.C);

  std::vector<double> qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 1.0;  // bias feature
    for (std::size_t j = 0; j < d; ++j) s += X(i, j) * X(i, j);
    qii[i] = s + diag;
  }

  SvmModel m;
  m.C = config.C;
  m.alpha.assign(n, 0.0);
  std::vector<double> wv(d + 1, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);

  for (int iter = 0; iter < config.max_iter; ++iter) {
    rng.shuffle(order);
    double max_violation = 0.0;
    for (std::size_t i : order) {
      const double yi = y[i];
      const double g = yi * augmented_score(wv, X, i) - 1.0 + m.alpha[i] * diag;
      const double pg = m.alpha[i] == 0.0 ? std::min(g, 0.0) : g;
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;
      const double old = m.alpha[i];
      m.alpha[i] = std::max(old - g / qii[i], 0.0);
      const double step = (m.alpha[i] - old) * yi;
      for (std::size_t j = 0; j < d; ++j) wv[j] += step * X(i, j);
      wv[d] += step;
    }
    m.iterations = iter + 1;

    double dual = 0.0;
    for (double v : wv) dual += 0.5 * v * v;
    for (double a : m.alpha) dual += a * a * diag * 0.5 - a;
    m.dual_objective_trace.push_back(dual);

    if (max_violation < config.tol) {
      m.converged = true;
      break;
    }
  }

  m.w.assign(wv.begin(), wv.begin() + static_cast<std::ptrdiff_t>(d));
  m.b = -wv[d];
  return m;
}

double decision_value(const SvmModel& m, std::span<const double> x) {
  if (x.size() != m.w.size()) throw ParameterError("feature dimension does not match the model");
  double s = -m.b;
  for (std::size_t j = 0; j < x.size(); ++j) s += m.w[j] * x[j];
  return s;
}

int predict(const SvmModel& m, std::span<const double> x) {
  return decision_value(m, x) >= 0.0 ? +1 : -1;
}

std::pair<std::vector<double>, double> feature_weights(const SvmModel& m) { return {m.w, m.b}; }

double primal_objective(const SvmModel& m, const Matrix& X, std::span<const int> y) {
  const std::vector<double> wv = augmented_weights(m);
  double obj = 0.0;
  for (double v : wv) obj += 0.5 * v * v;
  for (std::size_t i = 0; i < X.rows; ++i) {
    const double slack = std::max(0.0, 1.0 - y[i] * augmented_score(wv, X, i));
    obj += m.C * slack * slack;
  }
  return obj;
}

double dual_objective(const SvmModel& m, const Matrix& X, std::span<const int> y) {
  std::vector<double> wv(X.cols + 1, 0.0);
  double obj = 0.0;
  for (std::size_t i = 0; i < X.rows; ++i) {
    const double a = m.alpha.at(i);
    for (std::size_t j = 0; j < X.cols; ++j) wv[j] += a * y[i] * X(i, j);
    wv[X.cols] += a * y[i];
    obj += a * a / (4.0 * m.C) - a;
  }
  for (double v : wv) obj += 0.5 * v * v;
  return obj;
}

double max_projected_gradient(const SvmModel& m, const Matrix& X, std::span<const int> y) {
  std::vector<double> wv(X.cols + 1, 0.0);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) wv[j] += m.alpha.at(i) * y[i] * X(i, j);
    wv[X.cols] += m.alpha[i] * y[i];
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < X.rows; ++i) {
    const double g = y[i] * augmented_score(wv, X, i) - 1.0 + m.alpha[i] / (2.0 * m.C);
    const double pg = m.alpha[i] == 0.0 ? std::min(g, 0.0) : g;
    worst = std::max(worst, std::abs(pg));
  }
  return worst;
}

std::vector<int> stratified_folds(std::span<const int> y, int k, std::uint64_t seed) {
  if (k < 2) throw ParameterError("cross-validation needs at least 2 folds");
  std::vector<std::size_t> neg, pos;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] < 0 ? neg : pos).push_back(i);
  if (neg.size() < static_cast<std::size_t>(k) || pos.size() < static_cast<std::size_t>(k)) {
    throw ParameterError("each class needs at least " + std::to_string(k) +
                         " examples for " + std::to_string(k) + "-fold cross-validation");
  }
  Rng rng(seed);
  std::vector<int> fold(y.size(), -1);
  // Dealing continues across classes so fold sizes differ by at most one.
  std::size_t next = 0;
  for (auto* cls : {&neg, &pos}) {
    rng.shuffle(*cls);
    for (std::size_t i : *cls) fold[i] = static_cast<int>(next++ % static_cast<std::size_t>(k));
  }
  return fold;
}

CvReport cross_validate(const Matrix& X, std::span<const int> y, int k, const SvmConfig& config,
                        std::uint64_t seed) {
  if (X.rows != y.size()) throw ParameterError("feature rows and labels differ in length");
  CvReport report;
  report.folds = k;
  report.seed = seed;
  report.fold_assignment = stratified_folds(y, k, seed);
  report.fold_accuracies.assign(static_cast<std::size_t>(k), 0.0);

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < k; ++f) {
    try {
      std::vector<std::size_t> train_rows, test_rows;
      for (std::size_t i = 0; i < y.size(); ++i) {
        (report.fold_assignment[i] == f ? test_rows : train_rows).push_back(i);
      }
      Matrix Xtr(train_rows.size(), X.cols);
      std::vector<int> ytr(train_rows.size());
      for (std::size_t r = 0; r < train_rows.size(); ++r) {
        std::copy_n(X.row(train_rows[r]).begin(), X.cols, Xtr.row(r).begin());
        ytr[r] = y[train_rows[r]];
      }
      SvmConfig fold_config = config;
      fold_config.seed = stream_seed(config.seed, static_cast<std::uint64_t>(f));
      const SvmModel m = train_svm(Xtr, ytr, fold_config);
      std::size_t correct = 0;
      for (std::size_t i : test_rows) {
        if (predict(m, X.row(i)) == y[i]) ++correct;
      }
      report.fold_accuracies[f] = static_cast<double>(correct) / static_cast<double>(test_rows.size());
    } catch (...) {
      errors[f] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  report.mean_accuracy =
      std::accumulate(report.fold_accuracies.begin(), report.fold_accuracies.end(), 0.0) / k;
  return report;
}

void write_weight_csv(std::ostream& out, const SvmModel& m, const std::vector<std::string>& names) {
  if (names.size() != m.w.size()) throw ParameterError("one name per weight is required");
  char buf[32];
  out << "feature_name,weight\n";
  for (std::size_t j = 0; j < m.w.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", m.w[j]);
    out << names[j] << ',' << buf << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.17g", m.b);
  out << "bias," << buf << '\n';
}

}  // namespace corrview
