#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "corrview/corpus.hpp"
#include "corrview/corrlda2.hpp"
#include "corrview/svm.hpp"

namespace corrview {

inline constexpr double kDefaultGroupThreshold = 0.7;

// Topics grouped with the aspect they co-occur with more often than the
// threshold. Topics in no group (including never-used supertopics) are
// neutral.
struct TopicAspectGroups {
  std::vector<std::vector<int>> groups;  // per aspect, ascending topic ids
  std::vector<int> neutral;
  double threshold = kDefaultGroupThreshold;
};

// Throws ParameterError for threshold <= 0 or > 1; warns when the threshold
// no longer guarantees disjoint groups (<= 1/2 with two aspects).
TopicAspectGroups form_groups(const Cooccurrence& cooccurrence, double threshold);

struct AssociationWeights {
  std::vector<double> aspect;  // from an SVM on aspect fractions only
  std::vector<double> topic;   // from a separate SVM on topic fractions only
  SvmModel aspect_model;
  SvmModel topic_model;
};

// Trains both SVMs on every labeled document (no held-out data).
AssociationWeights extract_association_weights(const FeatureMatrix& aspect_features,
                                               const FeatureMatrix& topic_features,
                                               const SvmConfig& config);
AssociationWeights extract_association_weights(const CorrLda2State& state,
                                               const SvmConfig& config);

struct TopicRow {
  int topic = 0;
  double weight = 0.0;
  std::vector<std::string> top_words;
};

struct GroupReport {
  int aspect = 0;
  Viewpoint viewpoint = Viewpoint::kIsraeli;
  double aspect_weight = 0.0;
  std::vector<std::string> aspect_top_words;
  // Palestinian groups list topics by ascending weight, Israeli groups by
  // descending weight.
  std::vector<TopicRow> topics;
  double score = 0.0;  // sum of topic weights; the aspect weight is not included
};

// One report per aspect. Negative aspect weight -> Palestinian; zero or
// positive -> Israeli.
std::vector<GroupReport> classify_and_score(const TopicAspectGroups& groups,
                                            std::span<const double> aspect_weights,
                                            std::span<const double> topic_weights);

// Fills top words from phi / phi_tilde of a state and its vocabularies.
void attach_top_words(std::vector<GroupReport>& reports, const CorrLda2State& state,
                      std::size_t k = 12);

// Aligned text table: the aspect row followed by its topic rows, each with
// its SVM weight and top words.
std::string render_group_table(const GroupReport& report);

// The pair of groups compared in the consistency sweep: the aspect with the
// lowest weight stands for the Palestinian side, the highest for the Israeli
// side. sign_conflict is set when their weights do not have the expected
// signs (both negative or both non-negative).
struct GroupPair {
  const GroupReport* palestinian = nullptr;
  const GroupReport* israeli = nullptr;
  bool sign_conflict = false;
};
GroupPair pair_groups(const std::vector<GroupReport>& reports);

struct SweepConfig {
  int num_aspects = 2;
  Hyperparams hyperparams;
  int sweeps = kDefaultCorrLda2Sweeps;
  int average_last = 1;
  bool average_cooccurrence = false;
  double threshold = kDefaultGroupThreshold;
  SvmConfig svm;
  std::uint64_t seed = 1;
  int replicates = 1;  // chains per sweep point; scores are medians
  int jobs = 1;
  TopicUpdate topic_update = TopicUpdate::kCoupled;
};

struct SweepPoint {
  int num_topics = 0;
  PartitionScheme scheme = PartitionScheme::kOpinionNe;
  std::vector<std::uint64_t> seeds;  // one per replicate
  std::vector<GroupReport> groups;   // first replicate
  std::vector<int> neutral_topics;   // first replicate
  double palestinian_score = 0.0;    // median over replicates
  double israeli_score = 0.0;
  bool sign_conflict = false;  // in any replicate
};

struct SweepReport {
  PartitionScheme scheme = PartitionScheme::kOpinionNe;
  std::vector<SweepPoint> points;
  // min over points of the Israeli score minus max of the Palestinian score.
  double separation = 0.0;
  // Topic counts where the Palestinian score is >= the Israeli score.
  std::vector<int> overlap_points;
};

// Chain seed of one sweep point: a fresh stream per (topic count, replicate).
std::uint64_t sweep_point_seed(std::uint64_t base, int num_topics, int replicate);

// Trains one CorrLDA2 chain per topic count (and replicate), forms groups,
// classifies and scores them. Points run in parallel on config.jobs threads.
SweepReport consistency_sweep(std::shared_ptr<const BimodalCorpus> corpus, PartitionScheme scheme,
                              std::span<const int> topic_counts, const SweepConfig& config);

// Recomputes separation and overlap points from the points' scores.
void summarize_sweep(SweepReport& report);

}  // namespace corrview
