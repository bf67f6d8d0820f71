// corrview command-line driver.
//
//   corrview train    --config cfg.json [overrides]
//   corrview evaluate --checkpoint out/checkpoint.json [--mode combined]
//   corrview groups   --checkpoint out/checkpoint.json
//   corrview sweep    --config cfg.json --topics-range 5:60:5
//   corrview accuracy-curve --config cfg.json --topics-range 5:60:5
//   corrview stats    --config cfg.json
//
// Exit status: 0 on success, 1 on runtime errors, 2 on usage or
// configuration errors.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corrview/errors.hpp"
#include "corrview/experiment.hpp"

namespace {

using namespace corrview;

struct Overrides {
  std::string config_path;
  std::string corpus;
  std::string model;
  std::string scheme;
  std::string schemes;
  std::string topic_range;
  std::string mode;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> topics;
  std::optional<int> aspects;
  std::optional<int> sweeps;
  std::optional<int> jobs;
  std::optional<int> replicates;
  std::optional<int> min_count;
  std::optional<double> threshold;
};

void add_config_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "experiment configuration (JSON)");
  cmd->add_option("--corpus", o.corpus, "annotated corpus (JSONL)");
  cmd->add_option("--model", o.model, "lda or corrlda2");
  cmd->add_option("--scheme", o.scheme, "partition scheme: opinion+ne, opinion, adj+ne, ne");
  cmd->add_option("--schemes", o.schemes, "comma-separated partition schemes");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("-T,--topics", o.topics, "number of topics");
  cmd->add_option("-A,--aspects", o.aspects, "number of aspects");
  cmd->add_option("--sweeps", o.sweeps, "Gibbs sweeps");
  cmd->add_option("--min-count", o.min_count, "drop lemmas rarer than this");
  cmd->add_option("--threshold", o.threshold, "topic-aspect grouping threshold");
  cmd->add_option("-j,--jobs", o.jobs, "worker threads");
  cmd->add_option("-o,--out", o.out, "output directory");
}

PartitionScheme scheme_arg(const std::string& s) {
  auto p = parse_scheme(s);
  if (!p) throw UsageError("unknown partition scheme '" + s + "'");
  return *p;
}

std::optional<FeatureMode> mode_arg(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto m = parse_feature_mode(s);
  if (!m) throw UsageError("unknown feature mode '" + s + "'");
  return m;
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = ExperimentConfig::load(o.config_path);
  if (!o.corpus.empty()) c.corpus_path = o.corpus;
  if (!o.model.empty()) {
    if (o.model == "lda") {
      c.model = ModelKind::kLda;
    } else if (o.model == "corrlda2") {
      c.model = ModelKind::kCorrLda2;
    } else {
      throw UsageError("unknown model '" + o.model + "'");
    }
  }
  if (!o.scheme.empty()) c.scheme = scheme_arg(o.scheme);
  if (!o.schemes.empty()) {
    c.schemes.clear();
    std::size_t start = 0;
    while (start <= o.schemes.size()) {
      const std::size_t end = std::min(o.schemes.find(',', start), o.schemes.size());
      c.schemes.push_back(scheme_arg(o.schemes.substr(start, end - start)));
      start = end + 1;
    }
  }
  if (!o.topic_range.empty()) c.topic_range = parse_topic_range(o.topic_range);
  if (!o.mode.empty()) c.feature_mode = mode_arg(o.mode);
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.topics) c.topics = *o.topics;
  if (o.aspects) c.aspects = *o.aspects;
  if (o.sweeps) c.sweeps = *o.sweeps;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.replicates) c.replicates = *o.replicates;
  if (o.min_count) c.min_count = *o.min_count;
  if (o.threshold) c.threshold = *o.threshold;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrview: bimodal topic models for viewpoint analysis"};
  app.require_subcommand(1);

  Overrides o;
  std::string checkpoint;

  auto* train = app.add_subcommand("train", "train a model and write a checkpoint");
  add_config_options(train, o);
  train->add_option("--mode", o.mode, "feature mode recorded for evaluation");

  auto* evaluate = app.add_subcommand("evaluate", "cross-validate an SVM on checkpoint features");
  evaluate->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  evaluate->add_option("--mode", o.mode, "topics, aspects or combined");
  evaluate->add_option("-o,--out", o.out, "output directory");

  auto* groups = app.add_subcommand("groups", "form and score topic-aspect groups");
  groups->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  groups->add_option("-o,--out", o.out, "output directory");

  auto* sweep = app.add_subcommand("sweep", "group scores across topic counts");
  add_config_options(sweep, o);
  sweep->add_option("--topics-range", o.topic_range, "start:stop:step or a comma list");
  sweep->add_option("--replicates", o.replicates, "chains per topic count");

  auto* curve = app.add_subcommand("accuracy-curve", "cross-validated accuracy across topic counts");
  add_config_options(curve, o);
  curve->add_option("--topics-range", o.topic_range, "start:stop:step or a comma list");
  curve->add_option("--mode", o.mode, "topics, aspects or combined");

  auto* stats = app.add_subcommand("stats", "corpus statistics per partition scheme");
  add_config_options(stats, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::filesystem::path written;
    if (train->parsed()) {
      written = cmd_train(build_config(o));
    } else if (evaluate->parsed()) {
      const std::filesystem::path ck(checkpoint);
      written = cmd_evaluate(ck, mode_arg(o.mode), o.out.empty() ? ck.parent_path() : std::filesystem::path(o.out));
    } else if (groups->parsed()) {
      const std::filesystem::path ck(checkpoint);
      written = cmd_groups(ck, o.out.empty() ? ck.parent_path() : std::filesystem::path(o.out));
    } else if (sweep->parsed()) {
      written = cmd_sweep(build_config(o));
    } else if (curve->parsed()) {
      written = cmd_accuracy_curve(build_config(o));
    } else if (stats->parsed()) {
      written = cmd_stats(build_config(o));
    }
    std::cout << written.string() << '\n';
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "corrview: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "corrview: " << e.what() << '\n';
    return 1;
  }
}
