#include "corrview/training.hpp"

#include <cmath>
#include <limits>

#include "corrview/errors.hpp"

namespace corrview {
namespace {

void check_options(const ChainOptions& options) {
  if (options.sweeps < 0) throw ParameterError("sweeps must be >= 0");
  if (options.average_last < 1) throw ParameterError("average_last must be >= 1");
  if (options.average_last > std::max(options.sweeps, 1)) {
    throw ParameterError("cannot average over more sweeps than are run");
  }
}

template <typename State, typename Sweep>
void drive(State& state, const ChainOptions& options, std::vector<double>& trace, Sweep&& sweep,
           const std::function<void(const State&)>& retain) {
  const int first_retained = std::max(options.sweeps, 1) - options.average_last;
  for (int s = 0; s < options.sweeps; ++s) {
    sweep(state);
    double ll = std::numeric_limits<double>::quiet_NaN();
    if (options.trace_log_likelihood) {
      ll = state.log_likelihood();
      trace.push_back(ll);
    }
    if (options.on_sweep) options.on_sweep(s + 1, ll);
    if (s >= first_retained) retain(state);
  }
  if (options.sweeps == 0) retain(state);
}

}  // namespace

Cooccurrence CorrLda2Run::cooccurrence() const {
  return cooccurrence_frequencies(kernels::CountGrid{cooccurrence_counts,
                                                     std::size_t(state.num_aspects()),
                                                     std::size_t(state.num_topics())});
}

LdaRun run_lda(std::shared_ptr<const BimodalCorpus> corpus, int num_topics, const Hyperparams& h,
               std::uint64_t seed, const ChainOptions& options) {
  check_options(options);
  LdaRun run{LdaState::init(std::move(corpus), num_topics, h, seed), {}, {}};
  drive<LdaState>(
      run.state, options, run.log_likelihood, [](LdaState& s) { s.sweep(); },
      [&](const LdaState& s) { run.features.add(s); });
  return run;
}

CorrLda2Run run_corrlda2(std::shared_ptr<const BimodalCorpus> corpus, int num_topics,
                         int num_aspects, const Hyperparams& h, std::uint64_t seed,
                         const ChainOptions& options, TopicUpdate update) {
  check_options(options);
  CorrLda2Run run{CorrLda2State::init(std::move(corpus), num_topics, num_aspects, h, seed, update),
                  {}, {}, {}};
  run.cooccurrence_counts.assign(static_cast<std::size_t>(num_topics) * num_aspects, 0);
  drive<CorrLda2State>(
      run.state, options, run.log_likelihood, [](CorrLda2State& s) { s.full_sweep(); },
      [&](const CorrLda2State& s) {
        run.features.add(s);
        if (options.average_cooccurrence) {
          const auto grid = s.aspect_topic_grid();
          for (std::size_t k = 0; k < grid.data.size(); ++k) run.cooccurrence_counts[k] += grid.data[k];
        }
      });
  if (!options.average_cooccurrence) {
    const auto grid = run.state.aspect_topic_grid();
    run.cooccurrence_counts.assign(grid.data.begin(), grid.data.end());
  }
  return run;
}

}  // namespace corrview
