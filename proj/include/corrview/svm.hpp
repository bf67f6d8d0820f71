#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrview/features.hpp"
#include "corrview/matrix.hpp"

namespace corrview {

// L2-regularized L2-loss linear SVM,
//   min_w,b  1/2 (|w|^2 + b^2) + C sum_d max(0, 1 - y_d (w.x_d - b))^2,
// solved by dual coordinate descent with the bias carried as an extra
// constant feature (so it is regularized together with w). Features are used
// as given; no scaling is applied.
struct SvmConfig {
  double C = 1.0;
  double tol = 1e-4;
  int max_iter = 10000;
  std::uint64_t seed = 0;  // coordinate order
};

struct SvmModel {
  std::vector<double> w;
  double b = 0.0;
  double C = 1.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> alpha;               // dual variables, one per example
  std::vector<double> dual_objective_trace;  // after each outer iteration
};

SvmModel train_svm(const Matrix& X, std::span<const int> y, const SvmConfig& config);
inline SvmModel train_svm(const FeatureMatrix& fm, const SvmConfig& config) {
  return train_svm(fm.values, fm.labels, config);
}

// w.x - b
double decision_value(const SvmModel& m, std::span<const double> x);
// sign(w.x - b) with sign(0) = +1.
int predict(const SvmModel& m, std::span<const double> x);

// (w, b) exactly as learned; negative weights push towards label -1.
std::pair<std::vector<double>, double> feature_weights(const SvmModel& m);

// Primal objective of (w, b) on the given data.
double primal_objective(const SvmModel& m, const Matrix& X, std::span<const int> y);
// Dual objective (minimization form) of m.alpha:
//   1/2 |sum_i alpha_i y_i x_i|^2 + sum_i alpha_i^2 / (4C) - sum_i alpha_i
double dual_objective(const SvmModel& m, const Matrix& X, std::span<const int> y);
// Largest projected-gradient violation of m.alpha, recomputed from the data.
double max_projected_gradient(const SvmModel& m, const Matrix& X, std::span<const int> y);

struct CvReport {
  int folds = 0;
  std::vector<double> fold_accuracies;
  double mean_accuracy = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> fold_assignment;  // per row of the feature matrix
};

// Stratified assignment of rows to k folds: each class is shuffled with the
// seeded generator and dealt round-robin. Every class needs at least k rows.
std::vector<int> stratified_folds(std::span<const int> y, int k, std::uint64_t seed);

// k-fold cross-validation; accuracy = correct / total per fold. Folds are
// trained in parallel.
CvReport cross_validate(const Matrix& X, std::span<const int> y, int k, const SvmConfig& config,
                        std::uint64_t seed);
inline CvReport cross_validate(const FeatureMatrix& fm, int k, const SvmConfig& config,
                               std::uint64_t seed) {
  return cross_validate(fm.values, fm.labels, k, config, seed);
}

// feature_name,weight rows followed by a bias row.
void write_weight_csv(std::ostream& out, const SvmModel& m, const std::vector<std::string>& names);

}  // namespace corrview
