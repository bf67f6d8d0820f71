#include <memory>
#include <string>

#include <gtest/gtest.h>

#include "corrview/errors.hpp"
#include "corrview/log.hpp"
#include "corrview/viewpoint.hpp"
#include "../support/synthetic.hpp"

namespace corrview {
namespace {

Cooccurrence cooc(const std::vector<std::vector<double>>& rows, std::vector<bool> zero = {}) {
  Cooccurrence c;
  c.freq = Matrix(rows.size(), rows[0].size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t t = 0; t < rows[a].size(); ++t) c.freq(a, t) = rows[a][t];
  }
  c.zero_column = zero.empty() ? std::vector<bool>(rows[0].size(), false) : std::move(zero);
  return c;
}

TEST(FormGroups, StrictThreshold) {
  const Cooccurrence c = cooc({{0.9, 0.3, 0.7, 0.5, 0.0}, {0.1, 0.7, 0.3, 0.5, 0.0}},
                              {false, false, false, false, true});
  const TopicAspectGroups g = form_groups(c, 0.7);
  EXPECT_EQ(g.groups[0], (std::vector<int>{0}));
  EXPECT_TRUE(g.groups[1].empty());  // exactly 0.7 is not above the threshold
  EXPECT_EQ(g.neutral, (std::vector<int>{1, 2, 3, 4}));

  const TopicAspectGroups loose = form_groups(c, 0.6);
  EXPECT_EQ(loose.groups[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(loose.groups[1], (std::vector<int>{1}));
  EXPECT_EQ(loose.neutral, (std::vector<int>{3, 4}));
}

TEST(FormGroups, ThresholdOne) {
  const TopicAspectGroups g = form_groups(cooc({{1.0, 0.5}, {0.0, 0.5}}), 1.0);
  EXPECT_TRUE(g.groups[0].empty());
  EXPECT_EQ(g.neutral, (std::vector<int>{0, 1}));
}

TEST(FormGroups, ThresholdValidation) {
  const Cooccurrence c = cooc({{0.6}, {0.4}});
  EXPECT_THROW(form_groups(c, 0.0), ParameterError);
  EXPECT_THROW(form_groups(c, 1.5), ParameterError);
  int warnings = 0;
  log::ScopedSink sink([&](log::Level level, const std::string&) { warnings += level == log::Level::kWarning; });
  form_groups(c, 0.5);
  EXPECT_EQ(warnings, 1);
  form_groups(c, 0.51);
  EXPECT_EQ(warnings, 1);
}

TEST(ClassifyAndScore, OrderingAndScores) {
  TopicAspectGroups g;
  g.groups = {{0, 2, 3}, {1, 4}};
  const std::vector<double> aspect = {-1.0, 2.0};
  const std::vector<double> topic = {0.5, 1.0, -2.0, -0.25, 3.0};
  const auto reports = classify_and_score(g, aspect, topic);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].viewpoint, Viewpoint::kPalestinian);
  EXPECT_EQ(reports[1].viewpoint, Viewpoint::kIsraeli);
  EXPECT_EQ(reports[0].topics[0].topic, 2);
  EXPECT_EQ(reports[0].topics[1].topic, 3);
  EXPECT_EQ(reports[0].topics[2].topic, 0);
  EXPECT_EQ(reports[1].topics[0].topic, 4);
  EXPECT_DOUBLE_EQ(reports[0].score, -1.75);
  EXPECT_DOUBLE_EQ(reports[1].score, 4.0);
}

TEST(ClassifyAndScore, ZeroWeightIsIsraeliAndEmptyGroupScoresZero) {
  TopicAspectGroups g;
  g.groups = {{}, {0}};
  const std::vector<double> aspect = {0.0, -0.5};
  const std::vector<double> topic = {1.0};
  const auto reports = classify_and_score(g, aspect, topic);
  EXPECT_EQ(reports[0].viewpoint, Viewpoint::kIsraeli);
  EXPECT_EQ(reports[0].score, 0.0);
  EXPECT_EQ(reports[1].viewpoint, Viewpoint::kPalestinian);
  EXPECT_THROW(classify_and_score(g, std::vector<double>{1.0}, topic), ParameterError);
}

TEST(PairGroups, LowestAndHighestAspectWeight) {
  TopicAspectGroups g;
  g.groups = {{}, {}, {}};
  const std::vector<double> topic;
  auto reports = classify_and_score(g, std::vector<double>{0.5, -2.0, 1.5}, topic);
  GroupPair p = pair_groups(reports);
  EXPECT_EQ(p.palestinian->aspect, 1);
  EXPECT_EQ(p.israeli->aspect, 2);
  EXPECT_FALSE(p.sign_conflict);

  reports = classify_and_score(g, std::vector<double>{0.5, 0.25, 1.5}, topic);
  p = pair_groups(reports);
  EXPECT_EQ(p.palestinian->aspect, 1);
  EXPECT_TRUE(p.sign_conflict);

  reports = classify_and_score(g, std::vector<double>{1.0, 1.0, 1.0}, topic);
  p = pair_groups(reports);
  EXPECT_NE(p.palestinian, p.israeli);
}

TEST(RenderGroupTable, Layout) {
  GroupReport r;
  r.aspect = 0;
  r.viewpoint = Viewpoint::kPalestinian;
  r.aspect_weight = -4.01;
  r.aspect_top_words = {"occupied", "illegal"};
  r.topics = {{14, -5.36, {"wall", "land"}}, {8, -3.77, {"refugee"}}};
  r.score = -9.13;
  const std::string table = render_group_table(r);
  EXPECT_NE(table.find("Aspect 1"), std::string::npos);
  EXPECT_NE(table.find("Topic 15"), std::string::npos);
  EXPECT_NE(table.find("-5.36  wall land"), std::string::npos);
  EXPECT_NE(table.find("-4.01  occupied illegal"), std::string::npos);
  EXPECT_NE(table.find("score: -9.13"), std::string::npos);
  EXPECT_LT(table.find("Topic 15"), table.find("Topic 9"));
}

TEST(SummarizeSweep, SeparationAndOverlap) {
  SweepReport r;
  r.points.resize(3);
  const double pal[] = {-3.0, -1.0, 2.0};
  const double isr[] = {4.0, 2.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    r.points[i].num_topics = 10 * (i + 1);
    r.points[i].palestinian_score = pal[i];
    r.points[i].israeli_score = isr[i];
  }
  summarize_sweep(r);
  EXPECT_DOUBLE_EQ(r.separation, 1.0 - 2.0);
  EXPECT_EQ(r.overlap_points, (std::vector<int>{30}));
}

TEST(SweepPointSeed, DistinctStreams) {
  EXPECT_EQ(sweep_point_seed(1, 10, 0), sweep_point_seed(1, 10, 0));
  EXPECT_NE(sweep_point_seed(1, 10, 0), sweep_point_seed(1, 11, 0));
  EXPECT_NE(sweep_point_seed(1, 10, 0), sweep_point_seed(1, 10, 1));
  EXPECT_NE(sweep_point_seed(1, 10, 0), sweep_point_seed(2, 10, 0));
}

std::shared_ptr<const BimodalCorpus> planted_corpus() {
  synthetic::PlantedConfig pc;
  pc.num_docs = 60;
  pc.num_topics = 4;
  pc.topical_length = 30;
  pc.opinion_length = 15;
  return std::make_shared<BimodalCorpus>(apply_partition(synthetic::generate(pc).docs, PartitionScheme::kOpinionNe));
}

TEST(ConsistencySweep, ShapeAndDeterminism) {
  const auto corpus = planted_corpus();
  SweepConfig cfg;
  cfg.sweeps = 60;
  cfg.replicates = 3;
  cfg.seed = 5;
  const std::vector<int> range = {2, 4};
  const SweepReport a = consistency_sweep(corpus, PartitionScheme::kOpinionNe, range, cfg);
  ASSERT_EQ(a.points.size(), 2u);
  EXPECT_EQ(a.points[1].num_topics, 4);
  EXPECT_EQ(a.points[0].seeds.size(), 3u);
  EXPECT_EQ(a.points[1].seeds[2], sweep_point_seed(5, 4, 2));
  EXPECT_EQ(a.points[1].groups.size(), 2u);

  cfg.jobs = 3;
  const SweepReport b = consistency_sweep(corpus, PartitionScheme::kOpinionNe, range, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.points[i].palestinian_score, b.points[i].palestinian_score);
    EXPECT_EQ(a.points[i].israeli_score, b.points[i].israeli_score);
    EXPECT_EQ(a.points[i].neutral_topics, b.points[i].neutral_topics);
  }
  EXPECT_EQ(a.separation, b.separation);
}

TEST(ConsistencySweep, ParameterErrors) {
  const auto corpus = planted_corpus();
  SweepConfig cfg;
  cfg.sweeps = 5;
  const std::vector<int> range = {2};
  EXPECT_THROW(consistency_sweep(corpus, PartitionScheme::kOpinionNe, std::vector<int>{}, cfg), ParameterError);
  EXPECT_THROW(consistency_sweep(corpus, PartitionScheme::kOpinionNe, std::vector<int>{0}, cfg), ParameterError);
  cfg.num_aspects = 1;
  EXPECT_THROW(consistency_sweep(corpus, PartitionScheme::kOpinionNe, range, cfg), ParameterError);
}

}  // namespace
}  // namespace corrview
