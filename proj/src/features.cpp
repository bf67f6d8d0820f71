#include "corrview/features.hpp"

#include <cstdio>
#include <optional>

#include "corrview/errors.hpp"
#include "corrview/log.hpp"

namespace corrview {

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kTopics: return "topics";
    case FeatureMode::kAspects: return "aspects";
    case FeatureMode::kCombined: return "combined";
  }
  return "topics";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view s) {
  for (FeatureMode m : {FeatureMode::kTopics, FeatureMode::kAspects, FeatureMode::kCombined}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<double> topic_fractions(const LdaState& state, std::size_t d) {
  const int n = state.doc_length(d);
  if (n == 0) throw ModelError("document has no topical words");
  std::vector<double> out(static_cast<std::size_t>(state.num_topics()));
  for (int t = 0; t < state.num_topics(); ++t) {
    out[t] = static_cast<double>(state.doc_topic(d, t)) / n;
  }
  return out;
}

std::vector<double> aspect_fractions(const CorrLda2State& state, std::size_t d, bool* empty) {
  std::vector<double> out(static_cast<std::size_t>(state.num_aspects()), 0.0);
  const auto& z = state.aspect_assignments()[d];
  if (empty) *empty = z.empty();
  if (z.empty()) return out;
  for (int a : z) out[a] += 1.0;
  for (double& v : out) v /= static_cast<double>(z.size());
  return out;
}

void FeatureAverager::add_topics(const LdaState& state) {
  if (!corpus_) {
    corpus_ = state.corpus_ptr();
    num_topics_ = state.num_topics();
    topic_sum_ = Matrix(state.num_docs(), static_cast<std::size_t>(num_topics_));
    has_topical_.resize(state.num_docs());
    for (std::size_t d = 0; d < state.num_docs(); ++d) has_topical_[d] = state.doc_length(d) > 0;
  } else if (corpus_ != state.corpus_ptr() || num_topics_ != state.num_topics()) {
    throw ParameterError("averaged states must share the corpus and topic count");
  }
  Matrix fractions(state.num_docs(), static_cast<std::size_t>(num_topics_));
  kernels::row_fractions(state.doc_topic_grid(), fractions.data);
  for (std::size_t k = 0; k < fractions.data.size(); ++k) topic_sum_.data[k] += fractions.data[k];
}

void FeatureAverager::add(const LdaState& state) {
  if (num_aspects_ > 0) throw ParameterError("cannot mix LDA and CorrLDA2 states");
  add_topics(state);
  ++samples_;
}

void FeatureAverager::add(const CorrLda2State& state) {
  const bool first = !corpus_;
  if (!first && num_aspects_ != state.num_aspects()) {
    throw ParameterError("averaged states must share the aspect count");
  }
  add_topics(state.topical());
  const std::size_t A = static_cast<std::size_t>(state.num_aspects());
  if (first) {
    num_aspects_ = state.num_aspects();
    aspect_sum_ = Matrix(state.num_docs(), A);
    has_opinion_.resize(state.num_docs());
    for (std::size_t d = 0; d < state.num_docs(); ++d) {
      // Excluded documents have no topical words and never become rows.
      has_topical_[d] = state.included(d);
      has_opinion_[d] = !state.aspect_assignments()[d].empty();
    }
  }
  for (std::size_t d = 0; d < state.num_docs(); ++d) {
    std::vector<double> f = aspect_fractions(state, d);
    for (std::size_t a = 0; a < A; ++a) aspect_sum_(d, a) += f[a];
  }
  ++samples_;
}

FeatureMatrix FeatureAverager::build(FeatureMode mode) const {
  if (samples_ == 0) throw ParameterError("no states were added");
  const bool topics = mode != FeatureMode::kAspects;
  const bool aspects = mode != FeatureMode::kTopics;
  if (aspects && num_aspects_ == 0) {
    throw ParameterError("aspect features need a CorrLDA2 state");
  }
  const std::size_t T = static_cast<std::size_t>(num_topics_);
  const std::size_t A = static_cast<std::size_t>(num_aspects_);

  FeatureMatrix fm;
  if (topics) {
    for (std::size_t t = 0; t < T; ++t) fm.names.push_back("topic_" + std::to_string(t));
  }
  if (aspects) {
    for (std::size_t a = 0; a < A; ++a) fm.names.push_back("aspect_" + std::to_string(a));
  }

  const auto& docs = corpus_->docs;
  std::size_t unlabeled = 0;
  std::vector<std::size_t> rows;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!has_topical_[d]) continue;
    if (!docs[d].label) {
      ++unlabeled;
      continue;
    }
    rows.push_back(d);
  }
  if (unlabeled > 0) {
    log::warn(std::to_string(unlabeled) + " unlabeled documents excluded from the feature matrix");
  }
  if (rows.empty()) throw ValidationError("no labeled documents with topical words");

  const double scale = 1.0 / static_cast<double>(samples_);
  fm.values = Matrix(rows.size(), fm.names.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t d = rows[r];
    std::size_t c = 0;
    if (topics) {
      for (std::size_t t = 0; t < T; ++t) fm.values(r, c++) = topic_sum_(d, t) * scale;
    }
    if (aspects) {
      for (std::size_t a = 0; a < A; ++a) fm.values(r, c++) = aspect_sum_(d, a) * scale;
    }
    fm.labels.push_back(label_value(*docs[d].label));
    fm.doc_ids.push_back(docs[d].doc_id);
    fm.doc_index.push_back(d);
    fm.aspect_block_empty.push_back(num_aspects_ > 0 && !has_opinion_[d]);
  }
  return fm;
}

FeatureMatrix build_feature_matrix(const LdaState& state, FeatureMode mode) {
  if (mode != FeatureMode::kTopics) throw ParameterError("LDA states only have topic features");
  FeatureAverager avg;
  avg.add(state);
  return avg.build(mode);
}

FeatureMatrix build_feature_matrix(const CorrLda2State& state, FeatureMode mode) {
  FeatureAverager avg;
  avg.add(state);
  return avg.build(mode);
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& features) {
  out << "doc_id,label";
  for (std::size_t c = 0; c < features.cols(); ++c) out << ",f_" << c;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < features.rows(); ++r) {
    out << features.doc_ids[r] << ',' << features.labels[r];
    for (std::size_t c = 0; c < features.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", features.values(r, c));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace corrview
