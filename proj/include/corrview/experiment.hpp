#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrview/corpus.hpp"
#include "corrview/corrlda2.hpp"
#include "corrview/features.hpp"
#include "corrview/hyperparams.hpp"
#include "corrview/svm.hpp"
#include "corrview/viewpoint.hpp"

namespace corrview {

enum class ModelKind { kLda, kCorrLda2 };
std::string_view to_string(ModelKind kind);

// Everything that determines an experiment's outputs. Loaded from JSON;
// unknown keys are rejected. Every output file embeds to_json() of the
// effective configuration.
struct ExperimentConfig {
  std::string corpus_path;
  ModelKind model = ModelKind::kCorrLda2;
  PartitionScheme scheme = PartitionScheme::kOpinionNe;
  std::vector<PartitionScheme> schemes;  // sweep; empty means {scheme}
  int min_count = 1;
  int topics = 20;
  int aspects = 2;
  Hyperparams hyperparams;
  std::optional<int> sweeps;  // default depends on the model
  int average_last = 1;
  bool average_cooccurrence = false;
  TopicUpdate topic_update = TopicUpdate::kCoupled;
  double threshold = kDefaultGroupThreshold;
  SvmConfig svm;
  int cv_folds = 5;
  std::optional<FeatureMode> feature_mode;  // default: combined (CorrLDA2) / topics (LDA)
  std::uint64_t seed = 1;
  std::vector<int> topic_range;  // sweep / accuracy-curve
  int replicates = 1;
  int jobs = 1;
  int top_words = 12;
  std::string output_dir = "out";

  int effective_sweeps() const;
  FeatureMode effective_feature_mode() const;
  std::vector<PartitionScheme> effective_schemes() const;

  // Throws UsageError for invalid values or a missing corpus file.
  void validate() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
};

// Parses "5:60:5" (start:stop:step, inclusive), "1,2,3" or a single number.
std::vector<int> parse_topic_range(const std::string& text);

// Loads and partitions the configured corpus (unimodal for LDA).
std::shared_ptr<const BimodalCorpus> load_corpus(const ExperimentConfig& config);
std::shared_ptr<const BimodalCorpus> load_corpus(const ExperimentConfig& config,
                                                 PartitionScheme scheme);

// Subcommands. Each writes its outputs into config.output_dir and returns
// the main output path. Outputs embed {config, seed, code_version} and are
// byte-identical across reruns of the same configuration; the wall-clock
// timestamp goes only to the run.log sidecar.
std::filesystem::path cmd_stats(const ExperimentConfig& config);
std::filesystem::path cmd_train(const ExperimentConfig& config);
std::filesystem::path cmd_evaluate(const std::filesystem::path& checkpoint,
                                   std::optional<FeatureMode> mode,
                                   const std::filesystem::path& output_dir);
std::filesystem::path cmd_groups(const std::filesystem::path& checkpoint,
                                 const std::filesystem::path& output_dir);
std::filesystem::path cmd_sweep(const ExperimentConfig& config);
std::filesystem::path cmd_accuracy_curve(const ExperimentConfig& config);

nlohmann::json to_json(const CvReport& report);
nlohmann::json to_json(const GroupReport& report);
nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const CorpusStats& stats);

}  // namespace corrview
