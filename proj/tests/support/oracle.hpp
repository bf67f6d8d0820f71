#pragma once

// Test-side reference computations. Nothing here calls into the library's
// samplers or likelihood code: joint probabilities are built token by token
// from Polya-urn predictive probabilities (the chain rule over an
// exchangeable sequence), so they share no code path with the
// Dirichlet-multinomial normalizers used by the models.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Docs = std::vector<std::vector<int>>;
using Assign = std::vector<std::vector<int>>;

struct LdaConfig {
  int T = 2;
  int W = 0;
  double alpha = 0.1;
  double beta = 0.01;
};

// p(w, z) for LDA.
double lda_joint(const Docs& words, const Assign& z, const LdaConfig& c);

// All topic configurations of the corpus with their normalized posterior
// p(z | w).
std::map<Assign, double> lda_posterior(const Docs& words, const LdaConfig& c);

struct CorrConfig {
  int T = 2;
  int A = 2;
  int W = 0;
  int V = 0;
  double alpha = 0.1;
  double beta = 0.01;
  double beta_tilde = 0.01;
  double gamma = 0.01;
};

// One joint configuration of the CorrLDA2 latent variables.
struct CorrConfigState {
  Assign z, x, aspect;
  friend bool operator<(const CorrConfigState& a, const CorrConfigState& b) {
    if (a.z != b.z) return a.z < b.z;
    if (a.x != b.x) return a.x < b.x;
    return a.aspect < b.aspect;
  }
};

// p(w, z, x, aspect, w_tilde); zero when a supertopic is not the topic of
// some topical word of its document.
double corrlda2_joint(const Docs& words, const Docs& opinion, const CorrConfigState& s,
                      const CorrConfig& c);

// Normalized posterior over every configuration with non-zero probability.
std::map<CorrConfigState, double> corrlda2_posterior(const Docs& words, const Docs& opinion,
                                                     const CorrConfig& c);

// 0.5 * sum |p - q| over the union of supports.
template <typename K>
double total_variation(const std::map<K, double>& p, const std::map<K, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += it == q.end() ? v : (v > it->second ? v - it->second : it->second - v);
  }
  for (const auto& [k, v] : q) {
    if (!p.count(k)) tv += v;
  }
  return 0.5 * tv;
}

}  // namespace oracle
