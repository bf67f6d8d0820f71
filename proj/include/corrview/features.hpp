#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "corrview/corrlda2.hpp"
#include "corrview/lda.hpp"
#include "corrview/matrix.hpp"

namespace corrview {

enum class FeatureMode { kTopics, kAspects, kCombined };

std::string_view to_string(FeatureMode mode);
std::optional<FeatureMode> parse_feature_mode(std::string_view s);

// Per-document features for the SVM: fractions of a document's words
// assigned to each topic and/or aspect. Rows are the labeled documents that
// have at least one topical word; columns are named topic_<t> / aspect_<a>.
struct FeatureMatrix {
  Matrix values;
  std::vector<std::string> names;
  std::vector<int> labels;  // -1 / +1
  std::vector<std::string> doc_ids;
  std::vector<std::size_t> doc_index;  // row -> corpus document index
  // Rows whose document has no modeled opinion words; their aspect block is
  // all zero.
  std::vector<bool> aspect_block_empty;

  std::size_t rows() const { return values.rows; }
  std::size_t cols() const { return values.cols; }
};

// Fraction of the document's topical words assigned to each topic. The
// document must have at least one topical word.
std::vector<double> topic_fractions(const LdaState& state, std::size_t d);
inline std::vector<double> topic_fractions(const CorrLda2State& state, std::size_t d) {
  return topic_fractions(state.topical(), d);
}

// Fraction of the document's modeled opinion words assigned to each aspect.
// Returns all zeros and sets *empty when the document has none.
std::vector<double> aspect_fractions(const CorrLda2State& state, std::size_t d,
                                     bool* empty = nullptr);

// Averages fractions over several states of one chain (e.g. the last S
// sweeps). With a single state the result equals the state's own fractions.
class FeatureAverager {
 public:
  void add(const LdaState& state);
  void add(const CorrLda2State& state);

  std::size_t samples() const { return samples_; }
  FeatureMatrix build(FeatureMode mode) const;

 private:
  void add_topics(const LdaState& state);

  std::shared_ptr<const BimodalCorpus> corpus_;
  int num_topics_ = 0;
  int num_aspects_ = 0;
  std::size_t samples_ = 0;
  Matrix topic_sum_;
  Matrix aspect_sum_;
  std::vector<bool> has_topical_;
  std::vector<bool> has_opinion_;
};

// LDA states only support FeatureMode::kTopics.
FeatureMatrix build_feature_matrix(const LdaState& state, FeatureMode mode = FeatureMode::kTopics);
FeatureMatrix build_feature_matrix(const CorrLda2State& state, FeatureMode mode);

// CSV with header doc_id,label,f_0,...,f_{n-1}.
void write_feature_csv(std::ostream& out, const FeatureMatrix& features);

}  // namespace corrview
