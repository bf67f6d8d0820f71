#include "corrview/lda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "corrview/errors.hpp"

namespace corrview {

std::vector<double> lda_conditional_weights(std::span<const double> doc_topic,
                                            std::span<const double> word_topic,
                                            std::span<const double> topic_totals,
                                            double alpha, double beta, std::size_t vocab_size) {
  const std::size_t T = doc_topic.size();
  if (word_topic.size() != T || topic_totals.size() != T) {
    throw ParameterError("conditional inputs must all have one entry per topic");
  }
  const double doc_total = std::accumulate(doc_topic.begin(), doc_topic.end(), 0.0);
  const double doc_denom = doc_total + static_cast<double>(T) * alpha;
  const double w_beta = static_cast<double>(vocab_size) * beta;
  std::vector<double> p(T);
  for (std::size_t t = 0; t < T; ++t) {
    p[t] = (doc_topic[t] + alpha) / doc_denom * (word_topic[t] + beta) / (topic_totals[t] + w_beta);
  }
  return p;
}

LdaState::LdaState(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                   const Hyperparams& h, std::uint64_t seed)
    : corpus_(std::move(corpus)), num_topics_(num_topics), h_(h), seed_(seed), rng_(seed) {
  if (!corpus_) throw ParameterError("corpus must not be null");
  if (num_topics < 1) throw ParameterError("number of topics must be >= 1");
  h_.validate();
  if (corpus_->docs.empty()) throw EmptyCorpusError("cannot fit a topic model to an empty corpus");
  vocab_size_ = corpus_->topical_vocab.size();
  weights_.resize(static_cast<std::size_t>(num_topics));
}

LdaState LdaState::init(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                        const Hyperparams& h, std::uint64_t seed) {
  LdaState s(std::move(corpus), num_topics, h, seed);
  s.z_.resize(s.corpus_->docs.size());
  for (std::size_t d = 0; d < s.z_.size(); ++d) {
    const auto& ids = s.corpus_->docs[d].topical_ids;
    s.z_[d].resize(ids.size());
    for (int& t : s.z_[d]) t = static_cast<int>(s.rng_.below(static_cast<std::uint64_t>(num_topics)));
  }
  s.rebuild_counts();
  return s;
}

LdaState LdaState::from_assignments(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                                    const Hyperparams& h, std::uint64_t seed, Assignments z,
                                    long sweeps, const std::string& rng_state) {
  LdaState s(std::move(corpus), num_topics, h, seed);
  if (z.size() != s.corpus_->docs.size()) {
    throw ValidationError("assignment table has " + std::to_string(z.size()) +
                          " documents, corpus has " + std::to_string(s.corpus_->docs.size()));
  }
  for (std::size_t d = 0; d < z.size(); ++d) {
    if (z[d].size() != s.corpus_->docs[d].topical_ids.size()) {
      throw ValidationError("document " + std::to_string(d) + ": assignment length mismatch");
    }
    for (int t : z[d]) {
      if (t < 0 || t >= num_topics) {
        throw ValidationError("document " + std::to_string(d) + ": topic " + std::to_string(t) +
                              " out of range");
      }
    }
  }
  s.z_ = std::move(z);
  s.sweeps_ = sweeps;
  if (!rng_state.empty() && !s.rng_.deserialize(rng_state)) {
    throw ValidationError("invalid generator state");
  }
  s.rebuild_counts();
  s.check_invariants();
  return s;
}

void LdaState::add(std::size_t d, int w, int t, int delta) {
  doc_topic_[d * num_topics_ + t] += delta;
  word_topic_[static_cast<std::size_t>(w) * num_topics_ + t] += delta;
  topic_total_[t] += delta;
}

void LdaState::rebuild_counts() {
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  doc_topic_.assign(num_docs() * T, 0);
  word_topic_.assign(vocab_size_ * T, 0);
  topic_total_.assign(T, 0);
  for (std::size_t d = 0; d < z_.size(); ++d) {
    const auto& ids = corpus_->docs[d].topical_ids;
    for (std::size_t i = 0; i < ids.size(); ++i) add(d, ids[i], z_[d][i], +1);
  }
}

std::vector<double> LdaState::conditional(std::size_t d, std::size_t i) const {
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  const int w = corpus_->docs.at(d).topical_ids.at(i);
  const int current = z_[d][i];
  std::vector<double> dt(T), wt(T), tt(T);
  for (std::size_t t = 0; t < T; ++t) {
    const int own = static_cast<int>(t) == current ? 1 : 0;
    dt[t] = doc_topic(d, static_cast<int>(t)) - own;
    wt[t] = word_topic(static_cast<std::size_t>(w), static_cast<int>(t)) - own;
    tt[t] = topic_total(static_cast<int>(t)) - own;
  }
  std::vector<double> p = lda_conditional_weights(dt, wt, tt, h_.alpha, h_.beta, vocab_size_);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

void LdaState::sweep() { sweep_impl({}); }

void LdaState::sweep_impl(std::span<const std::int32_t> supertopic_counts) {
  const int T = num_topics_;
  const double w_beta = static_cast<double>(vocab_size_) * h_.beta;
  const bool coupled = !supertopic_counts.empty();

  for (std::size_t d = 0; d < z_.size(); ++d) {
    const auto& ids = corpus_->docs[d].topical_ids;
    const std::int32_t* dt = doc_topic_.data() + d * T;
    const std::int32_t* m = coupled ? supertopic_counts.data() + d * T : nullptr;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int w = ids[i];
      const int old = z_[d][i];
      add(d, w, old, -1);

      // A supertopic held only by this token pins the token's topic.
      if (coupled && m[old] > 0 && dt[old] == 0) {
        add(d, w, old, +1);
        continue;
      }

      const std::int32_t* wt = word_topic_.data() + static_cast<std::size_t>(w) * T;
      double total = 0.0;
      for (int t = 0; t < T; ++t) {
        // The document-length denominator is constant over t and cancels.
        double p = (dt[t] + h_.alpha) * (wt[t] + h_.beta) / (topic_total_[t] + w_beta);
        if (coupled && m[t] > 0) p *= std::pow(1.0 + 1.0 / dt[t], m[t]);
        weights_[t] = p;
        total += p;
      }
      const int t_new = static_cast<int>(rng_.categorical(weights_, total));
      z_[d][i] = t_new;
      add(d, w, t_new, +1);
    }
  }
  ++sweeps_;
}

Matrix LdaState::theta() const {
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  Matrix out(num_docs(), T);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    const double denom = doc_length(d) + static_cast<double>(T) * h_.alpha;
    for (std::size_t t = 0; t < T; ++t) {
      out(d, t) = (doc_topic(d, static_cast<int>(t)) + h_.alpha) / denom;
    }
  }
  return out;
}

Matrix LdaState::phi() const {
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  Matrix out(T, vocab_size_);
  const double w_beta = static_cast<double>(vocab_size_) * h_.beta;
  for (std::size_t t = 0; t < T; ++t) {
    const double denom = topic_total(static_cast<int>(t)) + w_beta;
    for (std::size_t w = 0; w < vocab_size_; ++w) {
      out(t, w) = (word_topic(w, static_cast<int>(t)) + h_.beta) / denom;
    }
  }
  return out;
}

double LdaState::log_likelihood() const {
  using kernels::Axis;
  return kernels::dirichlet_multinomial_log_norm(doc_topic_grid(), Axis::kRows, h_.alpha) +
         kernels::dirichlet_multinomial_log_norm(word_topic_grid(), Axis::kColumns, h_.beta);
}

void LdaState::check_invariants() const {
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  std::vector<std::int32_t> dt(num_docs() * T, 0), wt(vocab_size_ * T, 0), tt(T, 0);
  for (std::size_t d = 0; d < z_.size(); ++d) {
    const auto& ids = corpus_->docs[d].topical_ids;
    if (z_[d].size() != ids.size()) throw ModelError("assignment length mismatch");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int t = z_[d][i];
      if (t < 0 || t >= num_topics_) throw ModelError("topic assignment out of range");
      ++dt[d * T + t];
      ++wt[static_cast<std::size_t>(ids[i]) * T + t];
      ++tt[t];
    }
  }
  if (dt != doc_topic_) throw ModelError("document-topic counts disagree with assignments");
  if (wt != word_topic_) throw ModelError("word-topic counts disagree with assignments");
  if (tt != topic_total_) throw ModelError("topic totals disagree with assignments");
}

std::vector<std::pair<int, double>> top_words(std::span<const double> row, std::size_t k) {
  if (k < 1) throw ParameterError("k must be >= 1");
  std::vector<int> ids(row.size());
  std::iota(ids.begin(), ids.end(), 0);
  k = std::min(k, row.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(),
                    [&](int a, int b) { return row[a] > row[b] || (row[a] == row[b] && a < b); });
  std::vector<std::pair<int, double>> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) out.emplace_back(ids[j], row[ids[j]]);
  return out;
}

}  // namespace corrview
