#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "corrview/corrlda2.hpp"
#include "corrview/features.hpp"
#include "corrview/lda.hpp"

namespace corrview {

struct ChainOptions {
  int sweeps = 0;
  // Number of final sweeps whose features (and optionally co-occurrence
  // counts) are averaged. 1 means the final state only.
  int average_last = 1;
  bool average_cooccurrence = false;
  bool trace_log_likelihood = false;
  // Called after every sweep with (sweep number, log-likelihood or NaN).
  std::function<void(long, double)> on_sweep;
};

struct LdaRun {
  LdaState state;
  FeatureAverager features;
  std::vector<double> log_likelihood;
};

struct CorrLda2Run {
  CorrLda2State state;
  FeatureAverager features;
  std::vector<double> log_likelihood;
  // Aspect x topic counts used for grouping: the final state's, or summed
  // over the averaged sweeps.
  std::vector<std::int32_t> cooccurrence_counts;

  Cooccurrence cooccurrence() const;
};

LdaRun run_lda(std::shared_ptr<const BimodalCorpus> corpus, int num_topics, const Hyperparams& h,
               std::uint64_t seed, const ChainOptions& options);

CorrLda2Run run_corrlda2(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                         int num_aspects, const Hyperparams& h, std::uint64_t seed,
                         const ChainOptions& options,
                         TopicUpdate update = TopicUpdate::kCoupled);

}  // namespace corrview
