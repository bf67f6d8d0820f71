#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "corrview/corpus.hpp"
#include "corrview/hyperparams.hpp"
#include "corrview/kernels.hpp"
#include "corrview/matrix.hpp"
#include "corrview/rng.hpp"

namespace corrview {

using Assignments = std::vector<std::vector<int>>;

// Unnormalized collapsed-Gibbs topic weights for one token, from counts that
// already exclude the token:
//   (n_dt + alpha) / (n_d + T alpha) * (n_wt + beta) / (n_t + W beta)
std::vector<double> lda_conditional_weights(std::span<const double> doc_topic,
                                            std::span<const double> word_topic,
                                            std::span<const double> topic_totals,
                                            double alpha, double beta, std::size_t vocab_size);

// Collapsed Gibbs sampler state for LDA over the topical modality of a
// corpus. For plain LDA build the corpus with apply_unimodal. The corpus is
// shared read-only; the state itself must stay on one thread.
class LdaState {
 public:
  // Uniform random initial topics from the seeded stream.
  static LdaState init(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                       const Hyperparams& h, std::uint64_t seed);

  // Rebuilds counts from explicit assignments (checkpoints, tests). The
  // generator starts from `seed` unless rng_state is non-empty.
  static LdaState from_assignments(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                                   const Hyperparams& h, std::uint64_t seed, Assignments z,
                                   long sweeps = 0, const std::string& rng_state = {});

  int num_topics() const { return num_topics_; }
  std::size_t num_docs() const { return z_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }
  const Hyperparams& hyperparams() const { return h_; }
  std::uint64_t seed() const { return seed_; }
  long sweeps() const { return sweeps_; }
  const BimodalCorpus& corpus() const { return *corpus_; }
  std::shared_ptr<const BimodalCorpus> corpus_ptr() const { return corpus_; }

  const Assignments& assignments() const { return z_; }
  int doc_topic(std::size_t d, int t) const { return doc_topic_[d * num_topics_ + t]; }
  int word_topic(std::size_t w, int t) const { return word_topic_[w * num_topics_ + t]; }
  int topic_total(int t) const { return topic_total_[t]; }
  int doc_length(std::size_t d) const { return static_cast<int>(z_[d].size()); }

  kernels::CountGrid doc_topic_grid() const { return {doc_topic_, num_docs(), std::size_t(num_topics_)}; }
  kernels::CountGrid word_topic_grid() const { return {word_topic_, vocab_size_, std::size_t(num_topics_)}; }

  // Normalized full conditional of token i of document d given all other
  // assignments.
  std::vector<double> conditional(std::size_t d, std::size_t i) const;

  // Resamples every token once, documents in corpus order and tokens in
  // position order.
  void sweep();

  // Posterior means: theta is D x T, phi is T x W.
  Matrix theta() const;
  Matrix phi() const;

  // log p(w, z | alpha, beta) with theta and phi integrated out.
  double log_likelihood() const;

  // Throws ModelError when the cached counts disagree with the assignments.
  void check_invariants() const;

  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }

 private:
  friend class CorrLda2State;

  LdaState(std::shared_ptr<const BimodalCorpus> corpus, int num_topics, const Hyperparams& h,
           std::uint64_t seed);

  void add(std::size_t d, int w, int t, int delta);
  void rebuild_counts();

  // One sweep. When supertopic_counts is non-empty it holds, per document and
  // topic, how many opinion words use that topic as their supertopic; the
  // topic draw is then weighted by the likelihood of those supertopics.
  void sweep_impl(std::span<const std::int32_t> supertopic_counts);

  std::shared_ptr<const BimodalCorpus> corpus_;
  int num_topics_ = 0;
  std::size_t vocab_size_ = 0;
  Hyperparams h_;
  std::uint64_t seed_ = 0;
  long sweeps_ = 0;
  Rng rng_;
  Assignments z_;
  std::vector<std::int32_t> doc_topic_;   // D x T
  std::vector<std::int32_t> word_topic_;  // W x T
  std::vector<std::int32_t> topic_total_; // T
  std::vector<double> weights_;           // scratch
};

// The k most probable entries of a distribution over word ids, by descending
// probability with ties broken by ascending id. k is truncated to the row size.
std::vector<std::pair<int, double>> top_words(std::span<const double> row, std::size_t k);

}  // namespace corrview
