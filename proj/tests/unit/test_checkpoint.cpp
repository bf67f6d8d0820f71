#include <sstream>

#include <gtest/gtest.h>

#include "corrview/checkpoint.hpp"
#include "corrview/errors.hpp"
#include "corrview/log.hpp"
#include "../support/invariants.hpp"
#include "../support/synthetic.hpp"

namespace corrview {
namespace {

std::shared_ptr<const BimodalCorpus> random_corpus() {
  log::ScopedSink quiet([](log::Level, const std::string&) {});
  return std::make_shared<BimodalCorpus>(
      apply_partition(synthetic::random_annotated(30, 40, 5, 25, 3), PartitionScheme::kOpinionNe));
}

nlohmann::json round_trip(const nlohmann::json& j) {
  std::stringstream ss;
  save_checkpoint(ss, j);
  return read_checkpoint_json(ss);
}

TEST(Checkpoint, CorrLda2ResumesIdentically) {
  const auto corpus = random_corpus();
  log::ScopedSink quiet([](log::Level, const std::string&) {});
  CorrLda2State straight = CorrLda2State::init(corpus, 5, 2, Hyperparams{}, 21);
  CorrLda2State interrupted = CorrLda2State::init(corpus, 5, 2, Hyperparams{}, 21);
  for (int i = 0; i < 30; ++i) {
    straight.full_sweep();
    interrupted.full_sweep();
  }
  const nlohmann::json config = {{"note", "kept verbatim"}};
  LoadedCheckpoint loaded = restore_checkpoint(round_trip(checkpoint_json(interrupted, config)), corpus);
  ASSERT_TRUE(loaded.corrlda2.has_value());
  EXPECT_EQ(loaded.model, "corrlda2");
  EXPECT_EQ(loaded.config, config);
  CorrLda2State& resumed = *loaded.corrlda2;
  EXPECT_EQ(resumed.sweeps(), 30);
  EXPECT_EQ(invariants::check(resumed), "");
  for (int i = 0; i < 30; ++i) {
    straight.full_sweep();
    resumed.full_sweep();
  }
  EXPECT_EQ(straight.topical().assignments(), resumed.topical().assignments());
  EXPECT_EQ(straight.supertopics(), resumed.supertopics());
  EXPECT_EQ(straight.aspect_assignments(), resumed.aspect_assignments());
  EXPECT_EQ(straight.log_likelihood(), resumed.log_likelihood());
}

TEST(Checkpoint, LdaResumesIdentically) {
  const auto corpus = random_corpus();
  LdaState straight = LdaState::init(corpus, 4, Hyperparams{}, 8);
  LdaState interrupted = LdaState::init(corpus, 4, Hyperparams{}, 8);
  for (int i = 0; i < 10; ++i) {
    straight.sweep();
    interrupted.sweep();
  }
  LoadedCheckpoint loaded = restore_checkpoint(round_trip(checkpoint_json(interrupted, {})), corpus);
  ASSERT_TRUE(loaded.lda.has_value());
  for (int i = 0; i < 10; ++i) {
    straight.sweep();
    loaded.lda->sweep();
  }
  EXPECT_EQ(straight.assignments(), loaded.lda->assignments());
}

TEST(Checkpoint, RejectsBadInput) {
  const auto corpus = random_corpus();
  LdaState s = LdaState::init(corpus, 4, Hyperparams{}, 8);
  const nlohmann::json good = checkpoint_json(s, {});

  std::istringstream garbage("{not json");
  EXPECT_THROW(read_checkpoint_json(garbage), ValidationError);

  nlohmann::json j = good;
  j["format"] = "something else";
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
  j = good;
  j["version"] = 99;
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
  j = good;
  j["corpus"]["docs"] = 1;
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
  j = good;
  j.erase("z");
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
  j = good;
  j["z"][0][0] = 17;
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
  j = good;
  j["model"] = "plsa";
  EXPECT_THROW(restore_checkpoint(j, corpus), ValidationError);
}

}  // namespace
}  // namespace corrview
