#include "corrview/checkpoint.hpp"

#include "corrview/errors.hpp"
#include "corrview/version.hpp"

namespace corrview {

using nlohmann::json;

namespace {

json hyperparams_json(const Hyperparams& h) {
  return {{"alpha", h.alpha}, {"beta", h.beta}, {"beta_tilde", h.beta_tilde}, {"gamma", h.gamma}};
}

json common_fields(const LdaState& s, const char* model, const json& config) {
  const BimodalCorpus& c = s.corpus();
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"code_version", kCodeVersion},
          {"model", model},
          {"num_topics", s.num_topics()},
          {"hyperparams", hyperparams_json(s.hyperparams())},
          {"seed", s.seed()},
          {"rng", {{"algorithm", kRngName}, {"state", s.rng().serialize()}}},
          {"corpus",
           {{"docs", c.docs.size()},
            {"topical_vocab", c.topical_vocab.size()},
            {"opinion_vocab", c.opinion_vocab.size()}}},
          {"config", config},
          {"z", s.assignments()}};
}

template <typename T>
T field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("checkpoint is missing '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("checkpoint field '") + key + "': " + e.what());
  }
}

}  // namespace

json checkpoint_json(const LdaState& state, const json& config) {
  json j = common_fields(state, "lda", config);
  j["sweeps"] = state.sweeps();
  return j;
}

json checkpoint_json(const CorrLda2State& state, const json& config) {
  json j = common_fields(state.topical(), "corrlda2", config);
  j["sweeps"] = state.sweeps();
  j["num_aspects"] = state.num_aspects();
  j["topic_update"] = state.topic_update() == TopicUpdate::kCoupled ? "coupled" : "lda";
  j["x"] = state.supertopics();
  j["aspect_z"] = state.aspect_assignments();
  return j;
}

void save_checkpoint(std::ostream& out, const json& checkpoint) {
  out << checkpoint.dump(1) << '\n';
}

json read_checkpoint_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
}

LoadedCheckpoint restore_checkpoint(const json& j, std::shared_ptr<const BimodalCorpus> corpus) {
  if (field<std::string>(j, "format") != kCheckpointFormat) {
    throw ValidationError("not a corrview checkpoint");
  }
  if (field<int>(j, "version") != kCheckpointVersion) {
    throw ValidationError("unsupported checkpoint version");
  }
  const json& cj = j.at("corpus");
  if (field<std::size_t>(cj, "docs") != corpus->docs.size() ||
      field<std::size_t>(cj, "topical_vocab") != corpus->topical_vocab.size() ||
      field<std::size_t>(cj, "opinion_vocab") != corpus->opinion_vocab.size()) {
    throw ValidationError("checkpoint was trained on a different corpus");
  }
  const json& rng = j.at("rng");
  if (field<std::string>(rng, "algorithm") != kRngName) {
    throw ValidationError("checkpoint uses an unknown generator");
  }

  LoadedCheckpoint out;
  out.model = field<std::string>(j, "model");
  out.config = j.value("config", json::object());
  const json& hj = j.at("hyperparams");
  Hyperparams h{field<double>(hj, "alpha"), field<double>(hj, "beta"),
                field<double>(hj, "beta_tilde"), field<double>(hj, "gamma")};
  const int T = field<int>(j, "num_topics");
  const auto seed = field<std::uint64_t>(j, "seed");
  const long sweeps = field<long>(j, "sweeps");
  const auto rng_state = field<std::string>(rng, "state");
  auto z = field<Assignments>(j, "z");

  if (out.model == "lda") {
    out.lda.emplace(LdaState::from_assignments(corpus, T, h, seed, std::move(z), sweeps, rng_state));
  } else if (out.model == "corrlda2") {
    const std::string update = field<std::string>(j, "topic_update");
    if (update != "coupled" && update != "lda") throw ValidationError("unknown topic_update");
    out.corrlda2.emplace(CorrLda2State::from_assignments(
        corpus, T, field<int>(j, "num_aspects"), h, seed, std::move(z),
        field<Assignments>(j, "x"), field<Assignments>(j, "aspect_z"), sweeps, rng_state,
        update == "coupled" ? TopicUpdate::kCoupled : TopicUpdate::kLdaConditional));
  } else {
    throw ValidationError("unknown model '" + out.model + "'");
  }
  return out;
}

}  // namespace corrview
