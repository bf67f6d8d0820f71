#include "corrview/corrlda2.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "corrview/errors.hpp"
#include "corrview/log.hpp"

namespace corrview {

Matrix corrlda2_joint_weights(std::span<const double> doc_topic, double n_topical,
                              const Matrix& aspect_topic, std::span<const double> word_aspect,
                              std::span<const double> aspect_totals, double gamma,
                              double beta_tilde, std::size_t opinion_vocab_size) {
  const std::size_t T = doc_topic.size();
  const std::size_t A = word_aspect.size();
  if (aspect_topic.rows != A || aspect_topic.cols != T || aspect_totals.size() != A) {
    throw ParameterError("joint conditional inputs have inconsistent shapes");
  }
  if (!(n_topical > 0.0)) {
    throw ModelError("supertopic is undefined for a document without topical words");
  }
  const double v_beta = static_cast<double>(opinion_vocab_size) * beta_tilde;
  const double a_gamma = static_cast<double>(A) * gamma;
  Matrix out(T, A);
  for (std::size_t t = 0; t < T; ++t) {
    if (doc_topic[t] == 0.0) continue;
    double column = 0.0;
    for (std::size_t a = 0; a < A; ++a) column += aspect_topic(a, t);
    const double topic_factor = doc_topic[t] / n_topical;
    for (std::size_t a = 0; a < A; ++a) {
      out(t, a) = topic_factor * (aspect_topic(a, t) + gamma) / (column + a_gamma) *
                  (word_aspect[a] + beta_tilde) / (aspect_totals[a] + v_beta);
    }
  }
  return out;
}

Cooccurrence cooccurrence_frequencies(const kernels::CountGrid& aspect_topic) {
  Cooccurrence c;
  c.freq = Matrix(aspect_topic.rows, aspect_topic.cols);
  kernels::column_fractions(aspect_topic, c.freq.data);
  c.zero_column.assign(aspect_topic.cols, true);
  for (std::size_t r = 0; r < aspect_topic.rows; ++r) {
    for (std::size_t t = 0; t < aspect_topic.cols; ++t) {
      if (aspect_topic.at(r, t) != 0) c.zero_column[t] = false;
    }
  }
  return c;
}

CorrLda2State::CorrLda2State(LdaState topical, int num_aspects, TopicUpdate update)
    : topical_(std::move(topical)), num_aspects_(num_aspects), update_(update) {
  if (num_aspects < 1) throw ParameterError("number of aspects must be >= 1");
  opinion_vocab_size_ = topical_.corpus().opinion_vocab.size();
  const auto& docs = topical_.corpus().docs;
  included_.resize(docs.size());
  std::size_t topical_words = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    topical_words += docs[d].topical_ids.size();
    included_[d] = !docs[d].topical_ids.empty();
    if (!included_[d] && !docs[d].opinion_ids.empty()) {
      excluded_opinion_words_ += docs[d].opinion_ids.size();
    }
  }
  if (topical_words == 0) throw ModelError("corpus has no topical words");
  weights_.resize(static_cast<std::size_t>(num_topics()) * num_aspects_);
}

CorrLda2State CorrLda2State::init(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                                  int num_aspects, const Hyperparams& h, std::uint64_t seed,
                                  TopicUpdate update) {
  if (num_aspects < 1) throw ParameterError("number of aspects must be >= 1");
  CorrLda2State s(LdaState::init(std::move(corpus), num_topics, h, seed), num_aspects, update);
  const auto& docs = s.corpus().docs;
  const Assignments& z = s.topical_.assignments();
  Rng& rng = s.rng();
  s.x_.resize(docs.size());
  s.aspect_z_.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::size_t n_opinion = docs[d].opinion_ids.size();
    if (!s.included_[d]) {
      if (n_opinion > 0) {
        log::warn("document '" + docs[d].doc_id + "' has " + std::to_string(n_opinion) +
                  " opinion words but no topical words; its opinion words are excluded");
      }
      continue;
    }
    s.x_[d].resize(n_opinion);
    s.aspect_z_[d].resize(n_opinion);
    for (std::size_t i = 0; i < n_opinion; ++i) {
      s.x_[d][i] = z[d][rng.below(z[d].size())];
      s.aspect_z_[d][i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_aspects)));
    }
  }
  s.rebuild_opinion_counts();
  return s;
}

CorrLda2State CorrLda2State::from_assignments(std::shared_ptr<const BimodalCorpus> corpus,
                                              int num_topics, int num_aspects,
                                              const Hyperparams& h, std::uint64_t seed,
                                              Assignments z, Assignments x, Assignments aspect_z,
                                              long sweeps, const std::string& rng_state,
                                              TopicUpdate update) {
  if (num_aspects < 1) throw ParameterError("number of aspects must be >= 1");
  CorrLda2State s(LdaState::from_assignments(std::move(corpus), num_topics, h, seed, std::move(z),
                                             sweeps, rng_state),
                  num_aspects, update);
  const auto& docs = s.corpus().docs;
  if (x.size() != docs.size() || aspect_z.size() != docs.size()) {
    throw ValidationError("supertopic/aspect tables must have one row per document");
  }
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::size_t expected = s.included_[d] ? docs[d].opinion_ids.size() : 0;
    if (x[d].size() != expected || aspect_z[d].size() != expected) {
      throw ValidationError("document " + std::to_string(d) +
                            ": supertopic/aspect row length mismatch");
    }
    for (std::size_t i = 0; i < expected; ++i) {
      if (x[d][i] < 0 || x[d][i] >= num_topics || aspect_z[d][i] < 0 ||
          aspect_z[d][i] >= num_aspects) {
        throw ValidationError("document " + std::to_string(d) + ": assignment out of range");
      }
      if (s.topical_.doc_topic(d, x[d][i]) == 0) {
        throw ValidationError("document " + std::to_string(d) +
                              ": supertopic not among the document's topics");
      }
    }
  }
  s.x_ = std::move(x);
  s.aspect_z_ = std::move(aspect_z);
  s.sweeps_ = sweeps;
  s.rebuild_opinion_counts();
  s.check_invariants();
  return s;
}

void CorrLda2State::add_opinion(std::size_t d, int w, int t, int a, int delta) {
  const int T = num_topics();
  aspect_topic_[a * T + t] += delta;
  supertopic_total_[t] += delta;
  word_aspect_[static_cast<std::size_t>(w) * num_aspects_ + a] += delta;
  aspect_total_[a] += delta;
  doc_supertopic_[d * T + t] += delta;
}

void CorrLda2State::rebuild_opinion_counts() {
  const std::size_t T = static_cast<std::size_t>(num_topics());
  const std::size_t A = static_cast<std::size_t>(num_aspects_);
  aspect_topic_.assign(A * T, 0);
  supertopic_total_.assign(T, 0);
  word_aspect_.assign(opinion_vocab_size_ * A, 0);
  aspect_total_.assign(A, 0);
  doc_supertopic_.assign(num_docs() * T, 0);
  const auto& docs = corpus().docs;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t i = 0; i < x_[d].size(); ++i) {
      add_opinion(d, docs[d].opinion_ids[i], x_[d][i], aspect_z_[d][i], +1);
    }
  }
}

Matrix CorrLda2State::joint_conditional(std::size_t d, std::size_t i) const {
  if (d >= num_docs()) throw ParameterError("document index out of range");
  if (!included_[d]) {
    throw ModelError("document '" + corpus().docs[d].doc_id +
                     "' has no topical words; supertopic is undefined");
  }
  const int T = num_topics();
  const int A = num_aspects_;
  const int w = corpus().docs[d].opinion_ids.at(i);
  const int x = x_[d][i];
  const int a_cur = aspect_z_[d][i];

  std::vector<double> doc_topic(T);
  for (int t = 0; t < T; ++t) doc_topic[t] = topical_.doc_topic(d, t);
  Matrix aspect_topic(A, T);
  std::vector<double> word_aspect(A), aspect_totals(A);
  for (int a = 0; a < A; ++a) {
    for (int t = 0; t < T; ++t) {
      aspect_topic(a, t) = this->aspect_topic(a, t) - (a == a_cur && t == x ? 1 : 0);
    }
    word_aspect[a] = this->word_aspect(static_cast<std::size_t>(w), a) - (a == a_cur ? 1 : 0);
    aspect_totals[a] = aspect_total(a) - (a == a_cur ? 1 : 0);
  }
  const Hyperparams& h = hyperparams();
  Matrix p = corrlda2_joint_weights(doc_topic, topical_.doc_length(d), aspect_topic, word_aspect,
                                    aspect_totals, h.gamma, h.beta_tilde, opinion_vocab_size_);
  const double total = std::accumulate(p.data.begin(), p.data.end(), 0.0);
  for (double& v : p.data) v /= total;
  return p;
}

void CorrLda2State::sweep_topical() {
  if (update_ == TopicUpdate::kCoupled) {
    topical_.sweep_impl(doc_supertopic_);
  } else {
    topical_.sweep_impl({});
  }
}

void CorrLda2State::sweep_opinion() {
  const int T = num_topics();
  const int A = num_aspects_;
  const Hyperparams& h = hyperparams();
  const double v_beta = static_cast<double>(opinion_vocab_size_) * h.beta_tilde;
  const double a_gamma = A * h.gamma;
  const auto& docs = corpus().docs;
  Rng& rng = topical_.rng();

  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!included_[d] || x_[d].empty()) continue;
    const auto& ids = docs[d].opinion_ids;
    const double n_topical = topical_.doc_length(d);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int w = ids[i];
      add_opinion(d, w, x_[d][i], aspect_z_[d][i], -1);

      const std::int32_t* wa = word_aspect_.data() + static_cast<std::size_t>(w) * A;
      double total = 0.0;
      for (int t = 0; t < T; ++t) {
        const int n_dt = topical_.doc_topic(d, t);
        double* row = weights_.data() + static_cast<std::size_t>(t) * A;
        if (n_dt == 0) {
          std::fill(row, row + A, 0.0);
          continue;
        }
        const double topic_factor = n_dt / n_topical / (supertopic_total_[t] + a_gamma);
        for (int a = 0; a < A; ++a) {
          const double p = topic_factor * (aspect_topic_[a * T + t] + h.gamma) *
                           (wa[a] + h.beta_tilde) / (aspect_total_[a] + v_beta);
          row[a] = p;
          total += p;
        }
      }
      const std::size_t k = rng.categorical(weights_, total);
      x_[d][i] = static_cast<int>(k / A);
      aspect_z_[d][i] = static_cast<int>(k % A);
      add_opinion(d, w, x_[d][i], aspect_z_[d][i], +1);
    }
  }
}

void CorrLda2State::full_sweep() {
  sweep_topical();
  sweep_opinion();
  ++sweeps_;
}

Matrix CorrLda2State::theta() const { return topical_.theta(); }
Matrix CorrLda2State::phi() const { return topical_.phi(); }

Matrix CorrLda2State::psi() const {
  const int T = num_topics();
  const int A = num_aspects_;
  const double gamma = hyperparams().gamma;
  Matrix out(T, A);
  for (int t = 0; t < T; ++t) {
    const double denom = supertopic_total_[t] + A * gamma;
    for (int a = 0; a < A; ++a) out(t, a) = (aspect_topic(a, t) + gamma) / denom;
  }
  return out;
}

Matrix CorrLda2State::phi_tilde() const {
  const int A = num_aspects_;
  const double beta = hyperparams().beta_tilde;
  const double v_beta = static_cast<double>(opinion_vocab_size_) * beta;
  Matrix out(A, opinion_vocab_size_);
  for (int a = 0; a < A; ++a) {
    const double denom = aspect_total_[a] + v_beta;
    for (std::size_t w = 0; w < opinion_vocab_size_; ++w) {
      out(a, w) = (word_aspect(w, a) + beta) / denom;
    }
  }
  return out;
}

Cooccurrence CorrLda2State::cooccurrence_frequencies() const {
  return corrview::cooccurrence_frequencies(aspect_topic_grid());
}

double CorrLda2State::log_likelihood() const {
  using kernels::Axis;
  const Hyperparams& h = hyperparams();
  double ll = topical_.log_likelihood();
  // Supertopic choice: each opinion word picks a topical word uniformly.
  for (std::size_t d = 0; d < num_docs(); ++d) {
    if (x_[d].empty()) continue;
    const double n_topical = topical_.doc_length(d);
    for (int t = 0; t < num_topics(); ++t) {
      const int m = doc_supertopic(d, t);
      if (m > 0) ll += m * std::log(topical_.doc_topic(d, t) / n_topical);
    }
  }
  ll += kernels::dirichlet_multinomial_log_norm(aspect_topic_grid(), Axis::kColumns, h.gamma);
  ll += kernels::dirichlet_multinomial_log_norm(word_aspect_grid(), Axis::kColumns, h.beta_tilde);
  return ll;
}

void CorrLda2State::check_invariants() const {
  topical_.check_invariants();
  const std::size_t T = static_cast<std::size_t>(num_topics());
  const std::size_t A = static_cast<std::size_t>(num_aspects_);
  std::vector<std::int32_t> at(A * T, 0), st(T, 0), wa(opinion_vocab_size_ * A, 0), atot(A, 0),
      ds(num_docs() * T, 0);
  const auto& docs = corpus().docs;
  std::size_t opinion_words = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::size_t expected = included_[d] ? docs[d].opinion_ids.size() : 0;
    if (x_[d].size() != expected || aspect_z_[d].size() != expected) {
      throw ModelError("opinion assignment length mismatch");
    }
    for (std::size_t i = 0; i < expected; ++i) {
      const int t = x_[d][i];
      const int a = aspect_z_[d][i];
      if (t < 0 || t >= num_topics() || a < 0 || a >= num_aspects_) {
        throw ModelError("opinion assignment out of range");
      }
      if (topical_.doc_topic(d, t) == 0 && update_ == TopicUpdate::kCoupled) {
        throw ModelError("supertopic outside the document's topics");
      }
      ++at[a * T + t];
      ++st[t];
      ++wa[static_cast<std::size_t>(docs[d].opinion_ids[i]) * A + a];
      ++atot[a];
      ++ds[d * T + t];
      ++opinion_words;
    }
  }
  if (at != aspect_topic_) throw ModelError("aspect-topic counts disagree with assignments");
  if (st != supertopic_total_) throw ModelError("supertopic totals disagree with assignments");
  if (wa != word_aspect_) throw ModelError("word-aspect counts disagree with assignments");
  if (atot != aspect_total_) throw ModelError("aspect totals disagree with assignments");
  if (ds != doc_supertopic_) throw ModelError("document supertopic counts disagree");
  long at_sum = std::accumulate(aspect_topic_.begin(), aspect_topic_.end(), 0L);
  if (at_sum != static_cast<long>(opinion_words)) {
    throw ModelError("aspect-topic total differs from the number of modeled opinion words");
  }
}

}  // namespace corrview
