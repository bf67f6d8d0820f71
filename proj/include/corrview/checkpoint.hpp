#pragma once

#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "corrview/corrlda2.hpp"
#include "corrview/lda.hpp"

namespace corrview {

inline constexpr const char* kCheckpointFormat = "corrview-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// Checkpoints are JSON documents holding the model sizes, priors, seed,
// sweep counter, generator state and every assignment. Counts are not
// stored; loading recomputes them and verifies the state invariants. The
// experiment configuration that produced the state is embedded verbatim.
nlohmann::json checkpoint_json(const LdaState& state, const nlohmann::json& config);
nlohmann::json checkpoint_json(const CorrLda2State& state, const nlohmann::json& config);

void save_checkpoint(std::ostream& out, const nlohmann::json& checkpoint);

struct LoadedCheckpoint {
  std::string model;  // "lda" or "corrlda2"
  nlohmann::json config;
  std::optional<LdaState> lda;
  std::optional<CorrLda2State> corrlda2;
};

nlohmann::json read_checkpoint_json(std::istream& in);

// Rebuilds the state over `corpus`, which must be the corpus the checkpoint
// was trained on (document count and vocabulary sizes are checked).
LoadedCheckpoint restore_checkpoint(const nlohmann::json& checkpoint,
                                    std::shared_ptr<const BimodalCorpus> corpus);

}  // namespace corrview
