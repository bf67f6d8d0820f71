#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "corrview/lda.hpp"

namespace corrview {

// How topical-word topics are resampled inside a CorrLDA2 sweep.
//   kCoupled:        the LDA conditional times the probability of the
//                    document's existing supertopics under the candidate
//                    topic counts; the chain then targets the exact CorrLDA2
//                    posterior.
//   kLdaConditional: the LDA conditional alone, ignoring the supertopics.
enum class TopicUpdate { kCoupled, kLdaConditional };

// Unnormalized joint weights of (supertopic t, aspect a) for one opinion word,
// returned as a T x A matrix. All aspect counts must already exclude the word.
//   doc_topic[t] / n_topical
//     * (aspect_topic[a, t] + gamma) / (sum_a' aspect_topic[a', t] + A gamma)
//     * (word_aspect[a] + beta_tilde) / (aspect_totals[a] + V beta_tilde)
// aspect_topic is A x T. Entries with doc_topic[t] == 0 are exactly zero.
Matrix corrlda2_joint_weights(std::span<const double> doc_topic, double n_topical,
                              const Matrix& aspect_topic, std::span<const double> word_aspect,
                              std::span<const double> aspect_totals, double gamma,
                              double beta_tilde, std::size_t opinion_vocab_size);

// Topic-aspect co-occurrence frequencies: column t of an A x T count table
// normalized to sum to one. Columns with no counts are left at zero and
// flagged.
struct Cooccurrence {
  Matrix freq;                     // A x T
  std::vector<bool> zero_column;   // per topic: never used as a supertopic
};
Cooccurrence cooccurrence_frequencies(const kernels::CountGrid& aspect_topic);

class CorrLda2State {
 public:
  // Topical words get uniform topics; each opinion word takes the topic of a
  // uniformly chosen topical word of its document as supertopic and a uniform
  // aspect. Opinion words of documents without topical words are left out of
  // the model with a warning.
  static CorrLda2State init(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                            int num_aspects, const Hyperparams& h, std::uint64_t seed,
                            TopicUpdate update = TopicUpdate::kCoupled);

  // Rebuilds all counts from assignments. Excluded documents (no topical
  // words) must have empty supertopic and aspect rows.
  static CorrLda2State from_assignments(std::shared_ptr<const BimodalCorpus> corpus,
                                        int num_topics, int num_aspects, const Hyperparams& h,
                                        std::uint64_t seed, Assignments z, Assignments x,
                                        Assignments aspect_z, long sweeps = 0,
                                        const std::string& rng_state = {},
                                        TopicUpdate update = TopicUpdate::kCoupled);

  int num_topics() const { return topical_.num_topics(); }
  int num_aspects() const { return num_aspects_; }
  std::size_t num_docs() const { return topical_.num_docs(); }
  std::size_t opinion_vocab_size() const { return opinion_vocab_size_; }
  const Hyperparams& hyperparams() const { return topical_.hyperparams(); }
  std::uint64_t seed() const { return topical_.seed(); }
  long sweeps() const { return sweeps_; }
  TopicUpdate topic_update() const { return update_; }
  const BimodalCorpus& corpus() const { return topical_.corpus(); }
  std::shared_ptr<const BimodalCorpus> corpus_ptr() const { return topical_.corpus_ptr(); }

  const LdaState& topical() const { return topical_; }
  const Assignments& topic_assignments() const { return topical_.assignments(); }
  const Assignments& supertopics() const { return x_; }
  const Assignments& aspect_assignments() const { return aspect_z_; }

  // False for documents whose opinion words are left out (no topical words).
  bool included(std::size_t d) const { return included_[d]; }
  std::size_t excluded_opinion_words() const { return excluded_opinion_words_; }

  int aspect_topic(int a, int t) const { return aspect_topic_[a * num_topics() + t]; }
  int supertopic_total(int t) const { return supertopic_total_[t]; }
  int word_aspect(std::size_t w, int a) const { return word_aspect_[w * num_aspects_ + a]; }
  int aspect_total(int a) const { return aspect_total_[a]; }
  int doc_supertopic(std::size_t d, int t) const { return doc_supertopic_[d * num_topics() + t]; }

  kernels::CountGrid aspect_topic_grid() const {
    return {aspect_topic_, std::size_t(num_aspects_), std::size_t(num_topics())};
  }
  kernels::CountGrid word_aspect_grid() const {
    return {word_aspect_, opinion_vocab_size_, std::size_t(num_aspects_)};
  }

  // Normalized joint conditional of opinion word i of document d over
  // (supertopic, aspect), as a T x A matrix. Throws ModelError for excluded
  // documents.
  Matrix joint_conditional(std::size_t d, std::size_t i) const;

  void sweep_topical();
  void sweep_opinion();
  // sweep_topical then sweep_opinion on the same generator stream.
  void full_sweep();

  Matrix theta() const;      // D x T, topical words only
  Matrix phi() const;        // T x W
  Matrix psi() const;        // T x A
  Matrix phi_tilde() const;  // A x V

  Cooccurrence cooccurrence_frequencies() const;

  // Collapsed log p(w, z, x, aspects, opinion words) over both modalities.
  double log_likelihood() const;

  void check_invariants() const;

  Rng& rng() { return topical_.rng(); }
  const Rng& rng() const { return topical_.rng(); }

 private:
  CorrLda2State(LdaState topical, int num_aspects, TopicUpdate update);

  void add_opinion(std::size_t d, int w, int t, int a, int delta);
  void rebuild_opinion_counts();

  LdaState topical_;
  int num_aspects_ = 0;
  std::size_t opinion_vocab_size_ = 0;
  TopicUpdate update_ = TopicUpdate::kCoupled;
  long sweeps_ = 0;
  Assignments x_;
  Assignments aspect_z_;
  std::vector<bool> included_;
  std::size_t excluded_opinion_words_ = 0;
  std::vector<std::int32_t> aspect_topic_;      // A x T
  std::vector<std::int32_t> supertopic_total_;  // T
  std::vector<std::int32_t> word_aspect_;       // V x A
  std::vector<std::int32_t> aspect_total_;      // A
  std::vector<std::int32_t> doc_supertopic_;    // D x T
  std::vector<double> weights_;                 // scratch, T x A
};

}  // namespace corrview
