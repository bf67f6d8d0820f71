#include <gtest/gtest.h>

#include <json.hpp>

#include "corrview/errors.hpp"
#include "corrview/experiment.hpp"
#include "corrview/log.hpp"
#include "corrview/version.hpp"
#include "../support/workspace.hpp"

namespace corrview {
namespace {

using nlohmann::json;

TEST(TopicRange, Forms) {
  EXPECT_EQ(parse_topic_range("5:20:5"), (std::vector<int>{5, 10, 15, 20}));
  EXPECT_EQ(parse_topic_range("5:7"), (std::vector<int>{5, 6, 7}));
  EXPECT_EQ(parse_topic_range("3,8,2"), (std::vector<int>{3, 8, 2}));
  EXPECT_EQ(parse_topic_range("12"), (std::vector<int>{12}));
  for (const char* bad : {"", "a", "5:1", "5:10:0", "3,x", "1:2:3:4"}) {
    EXPECT_THROW(parse_topic_range(bad), UsageError) << bad;
  }
}

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c;
  c.corpus_path = "corpus.jsonl";
  c.model = ModelKind::kCorrLda2;
  c.scheme = PartitionScheme::kAdjNe;
  c.topics = 7;
  c.hyperparams.gamma = 0.5;
  c.sweeps = 42;
  c.svm.C = 3.0;
  c.topic_range = {2, 4};
  c.topic_update = TopicUpdate::kLdaConditional;
  const json j = c.to_json();
  EXPECT_EQ(ExperimentConfig::from_json(j).to_json(), j);
  EXPECT_EQ(j["sweeps"], 42);
  EXPECT_EQ(j["schemes"], json::array({"adj+ne"}));
}

TEST(ExperimentConfig, Defaults) {
  ExperimentConfig c;
  EXPECT_EQ(c.effective_feature_mode(), FeatureMode::kCombined);
  EXPECT_EQ(c.effective_sweeps(), kDefaultCorrLda2Sweeps);
  c.model = ModelKind::kLda;
  EXPECT_EQ(c.effective_feature_mode(), FeatureMode::kTopics);
  EXPECT_EQ(c.effective_sweeps(), kDefaultLdaSweeps);
  EXPECT_EQ(c.effective_schemes(), (std::vector<PartitionScheme>{PartitionScheme::kOpinionNe}));
}

TEST(ExperimentConfig, RejectsUnknownAndMistypedKeys) {
  EXPECT_THROW(ExperimentConfig::from_json(json{{"topicz", 3}}), UsageError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"hyperparams", {{"delta", 1}}}}), UsageError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"svm", {{"gamma", 1}}}}), UsageError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"topics", "many"}}), UsageError);
  EXPECT_THROW(ExperimentConfig::from_json(json{{"scheme", "verbs"}}), UsageError);
  EXPECT_THROW(ExperimentConfig::from_json(json::array()), UsageError);
  EXPECT_EQ(ExperimentConfig::from_json(json{{"topic_range", "2:6:2"}}).topic_range, (std::vector<int>{2, 4, 6}));
}

TEST(ExperimentConfig, Validation) {
  workspace::TempDir tmp;
  workspace::write_planted_corpus(tmp / "c.jsonl");
  ExperimentConfig c;
  EXPECT_THROW(c.validate(), UsageError);
  c.corpus_path = (tmp / "missing.jsonl").string();
  EXPECT_THROW(c.validate(), UsageError);
  c.corpus_path = (tmp / "c.jsonl").string();
  EXPECT_NO_THROW(c.validate());
  ExperimentConfig bad = c;
  bad.threshold = 0.0;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.model = ModelKind::kLda;
  bad.feature_mode = FeatureMode::kAspects;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.hyperparams.alpha = -1;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = c;
  bad.cv_folds = 1;
  EXPECT_THROW(bad.validate(), UsageError);
}

class Commands : public ::testing::Test {
 protected:
  void SetUp() override {
    workspace::write_planted_corpus(tmp / "corpus.jsonl");
    config.corpus_path = (tmp / "corpus.jsonl").string();
    config.topics = 4;
    config.sweeps = 40;
    config.seed = 3;
    config.output_dir = (tmp / "run").string();
  }

  log::ScopedSink quiet{[](log::Level, const std::string&) {}};
  workspace::TempDir tmp;
  ExperimentConfig config;
};

TEST_F(Commands, TrainWritesReproducibleOutputs) {
  const auto ck = cmd_train(config);
  EXPECT_EQ(ck, tmp / "run" / "checkpoint.json");
  EXPECT_EQ(workspace::data_lines(tmp / "run" / "loglik.csv"), 41u);  // header + one row per sweep
  const std::string first = workspace::read_file(ck);
  const std::string first_ll = workspace::read_file(tmp / "run" / "loglik.csv");
  cmd_train(config);
  EXPECT_EQ(workspace::read_file(ck), first);
  EXPECT_EQ(workspace::read_file(tmp / "run" / "loglik.csv"), first_ll);

  const json j = json::parse(first);
  EXPECT_EQ(j["config"]["seed"], 3);
  EXPECT_EQ(j["code_version"], kCodeVersion);
  EXPECT_EQ(j["sweeps"], 40);
  EXPECT_EQ(workspace::data_lines(tmp / "run" / "run.log"), 2u);
}

TEST_F(Commands, EvaluateAndGroups) {
  const auto ck = cmd_train(config);
  const auto report = cmd_evaluate(ck, std::nullopt, tmp / "eval");
  const json r = json::parse(workspace::read_file(report));
  EXPECT_EQ(r["config"]["topics"], 4);
  EXPECT_EQ(r["seed"], 3);
  EXPECT_TRUE(r.contains("code_version"));
  EXPECT_EQ(r["cv"]["fold_accuracies"].size(), 5u);
  const std::string first = workspace::read_file(report);
  cmd_evaluate(ck, std::nullopt, tmp / "eval");
  EXPECT_EQ(workspace::read_file(report), first);

  const auto groups = cmd_groups(ck, tmp / "groups");
  const json g = json::parse(workspace::read_file(groups));
  EXPECT_EQ(g["groups"].size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(tmp / "groups" / "groups.txt"));
  EXPECT_EQ(workspace::data_lines(tmp / "groups" / "weights_aspects.csv"), 1u + 2u + 1u);
  EXPECT_EQ(workspace::data_lines(tmp / "groups" / "weights_topics.csv"), 1u + 4u + 1u);

  config.model = ModelKind::kLda;
  config.output_dir = (tmp / "lda").string();
  const auto lda_ck = cmd_train(config);
  EXPECT_NO_THROW(cmd_evaluate(lda_ck, std::nullopt, tmp / "lda"));
  EXPECT_THROW(cmd_evaluate(lda_ck, FeatureMode::kAspects, tmp / "lda"), UsageError);
  EXPECT_THROW(cmd_groups(lda_ck, tmp / "lda"), UsageError);
}

TEST_F(Commands, MissingCheckpointIsAUsageError) {
  EXPECT_THROW(cmd_evaluate(tmp / "nope.json", std::nullopt, tmp.path()), UsageError);
}

TEST_F(Commands, SweepRows) {
  config.topic_range = {2, 3, 4};
  config.schemes = {PartitionScheme::kOpinionNe, PartitionScheme::kAdjNe};
  config.sweeps = 20;
  const auto path = cmd_sweep(config);
  EXPECT_EQ(workspace::data_lines(tmp / "run" / "sweep.csv"), 1u + 3u * 2u);
  const json j = json::parse(workspace::read_file(path));
  EXPECT_TRUE(j.contains("config"));
}

TEST_F(Commands, AccuracyCurveRows) {
  config.topic_range = {2, 4};
  config.sweeps = 20;
  config.jobs = 2;
  const auto path = cmd_accuracy_curve(config);
  EXPECT_EQ(workspace::data_lines(path), 1u + 2u);
  // The thread count is part of the embedded configuration; the rows are not
  // affected by it.
  auto rows = [&] {
    const std::string text = workspace::read_file(path);
    return text.substr(text.find('\n'));
  };
  const std::string first = rows();
  config.jobs = 1;
  cmd_accuracy_curve(config);
  EXPECT_EQ(rows(), first);
}

TEST_F(Commands, Stats) {
  const auto path = cmd_stats(config);
  const json j = json::parse(workspace::read_file(path));
  EXPECT_TRUE(j.contains("config"));
  EXPECT_EQ(j["stats"]["opinion+ne"]["docs"], 40);
}

}  // namespace
}  // namespace corrview
