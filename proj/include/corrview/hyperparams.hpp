#pragma once

#include <cmath>
#include <string>

#include "corrview/errors.hpp"

namespace corrview {

// Symmetric Dirichlet priors: alpha (document-topic), beta (topic-word),
// beta_tilde (aspect-opinion word), gamma (topic-aspect). The defaults are the
// published experiment settings.
struct Hyperparams {
  double alpha = 0.1;
  double beta = 0.01;
  double beta_tilde = 0.01;
  double gamma = 0.01;

  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string("hyperparameter ") + name + " must be positive");
      }
    };
    check(alpha, "alpha");
    check(beta, "beta");
    check(beta_tilde, "beta_tilde");
    check(gamma, "gamma");
  }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

inline constexpr int kDefaultLdaSweeps = 600;
inline constexpr int kDefaultCorrLda2Sweeps = 2000;

}  // namespace corrview
