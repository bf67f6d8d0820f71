#include "corrview/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "corrview/checkpoint.hpp"
#include "corrview/errors.hpp"
#include "corrview/log.hpp"
#include "corrview/training.hpp"
#include "corrview/version.hpp"

namespace corrview {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(ModelKind kind) { return kind == ModelKind::kLda ? "lda" : "corrlda2"; }

int ExperimentConfig::effective_sweeps() const {
  if (sweeps) return *sweeps;
  return model == ModelKind::kLda ? kDefaultLdaSweeps : kDefaultCorrLda2Sweeps;
}

FeatureMode ExperimentConfig::effective_feature_mode() const {
  if (feature_mode) return *feature_mode;
  return model == ModelKind::kLda ? FeatureMode::kTopics : FeatureMode::kCombined;
}

std::vector<PartitionScheme> ExperimentConfig::effective_schemes() const {
  return schemes.empty() ? std::vector<PartitionScheme>{scheme} : schemes;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw UsageError(m); };
  if (corpus_path.empty()) fail("corpus_path is required");
  if (!fs::is_regular_file(corpus_path)) fail("corpus file '" + corpus_path + "' does not exist");
  if (min_count < 1) fail("min_count must be >= 1");
  if (topics < 1) fail("topics must be >= 1");
  if (aspects < 1) fail("aspects must be >= 1");
  if (effective_sweeps() < 0) fail("sweeps must be >= 0");
  if (average_last < 1 || average_last > std::max(effective_sweeps(), 1)) {
    fail("average_last must lie in [1, sweeps]");
  }
  if (!(threshold > 0.0) || threshold > 1.0) fail("threshold must lie in (0, 1]");
  if (!(svm.C > 0.0) || !(svm.tol > 0.0) || svm.max_iter < 1) fail("invalid svm settings");
  if (cv_folds < 2) fail("cv_folds must be >= 2");
  if (replicates < 1) fail("replicates must be >= 1");
  if (jobs < 1) fail("jobs must be >= 1");
  if (top_words < 1) fail("top_words must be >= 1");
  for (int t : topic_range) {
    if (t < 1) fail("topic_range values must be >= 1");
  }
  if (model == ModelKind::kLda && effective_feature_mode() != FeatureMode::kTopics) {
    fail("LDA models only support topic features");
  }
  try {
    hyperparams.validate();
  } catch (const ParameterError& e) {
    fail(e.what());
  }
}

json ExperimentConfig::to_json() const {
  json schemes_json = json::array();
  for (PartitionScheme s : effective_schemes()) schemes_json.push_back(std::string(corrview::to_string(s)));
  return {{"corpus_path", corpus_path},
          {"model", std::string(corrview::to_string(model))},
          {"scheme", std::string(corrview::to_string(scheme))},
          {"schemes", schemes_json},
          {"min_count", min_count},
          {"topics", topics},
          {"aspects", aspects},
          {"hyperparams",
           {{"alpha", hyperparams.alpha},
            {"beta", hyperparams.beta},
            {"beta_tilde", hyperparams.beta_tilde},
            {"gamma", hyperparams.gamma}}},
          {"sweeps", effective_sweeps()},
          {"average_last", average_last},
          {"average_cooccurrence", average_cooccurrence},
          {"topic_update", topic_update == TopicUpdate::kCoupled ? "coupled" : "lda"},
          {"threshold", threshold},
          {"svm", {{"C", svm.C}, {"tol", svm.tol}, {"max_iter", svm.max_iter}, {"seed", svm.seed}}},
          {"cv_folds", cv_folds},
          {"feature_mode", std::string(corrview::to_string(effective_feature_mode()))},
          {"seed", seed},
          {"topic_range", topic_range},
          {"replicates", replicates},
          {"jobs", jobs},
          {"top_words", top_words},
          {"output_dir", output_dir}};
}

namespace {

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

PartitionScheme scheme_from(const json& j, const std::string& key) {
  auto s = parse_scheme(get_as<std::string>(j, key));
  if (!s) throw UsageError("unknown partition scheme '" + j.get<std::string>() + "'");
  return *s;
}

}  // namespace

std::vector<int> parse_topic_range(const std::string& text) {
  std::vector<int> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<int> parts;
      std::istringstream is(text);
      std::string part;
      while (std::getline(is, part, ':')) {
        std::size_t used = 0;
        parts.push_back(std::stoi(part, &used));
        if (used != part.size()) throw UsageError("");
      }
      if (text.back() == ':' || parts.size() < 2 || parts.size() > 3) throw UsageError("");
      const int start = parts[0], stop = parts[1], step = parts.size() == 3 ? parts[2] : 1;
      if (step < 1 || stop < start) throw UsageError("");
      for (int t = start; t <= stop; t += step) out.push_back(t);
    } else {
      std::istringstream is(text);
      std::string part;
      while (std::getline(is, part, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoi(part, &used));
        if (used != part.size()) throw UsageError("");
      }
    }
  } catch (const std::exception&) {
    throw UsageError("invalid topic range '" + text + "'");
  }
  if (out.empty()) throw UsageError("invalid topic range '" + text + "'");
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "corpus_path") {
      c.corpus_path = get_as<std::string>(value, key);
    } else if (key == "model") {
      const auto m = get_as<std::string>(value, key);
      if (m == "lda") {
        c.model = ModelKind::kLda;
      } else if (m == "corrlda2") {
        c.model = ModelKind::kCorrLda2;
      } else {
        throw UsageError("unknown model '" + m + "'");
      }
    } else if (key == "scheme") {
      c.scheme = scheme_from(value, key);
    } else if (key == "schemes") {
      if (!value.is_array()) throw UsageError("schemes must be an array");
      for (const json& s : value) c.schemes.push_back(scheme_from(s, key));
    } else if (key == "min_count") {
      c.min_count = get_as<int>(value, key);
    } else if (key == "topics") {
      c.topics = get_as<int>(value, key);
    } else if (key == "aspects") {
      c.aspects = get_as<int>(value, key);
    } else if (key == "hyperparams") {
      for (const auto& [hk, hv] : value.items()) {
        if (hk == "alpha") {
          c.hyperparams.alpha = get_as<double>(hv, hk);
        } else if (hk == "beta") {
          c.hyperparams.beta = get_as<double>(hv, hk);
        } else if (hk == "beta_tilde") {
          c.hyperparams.beta_tilde = get_as<double>(hv, hk);
        } else if (hk == "gamma") {
          c.hyperparams.gamma = get_as<double>(hv, hk);
        } else {
          throw UsageError("unknown hyperparameter '" + hk + "'");
        }
      }
    } else if (key == "sweeps") {
      c.sweeps = get_as<int>(value, key);
    } else if (key == "average_last") {
      c.average_last = get_as<int>(value, key);
    } else if (key == "average_cooccurrence") {
      c.average_cooccurrence = get_as<bool>(value, key);
    } else if (key == "topic_update") {
      const auto u = get_as<std::string>(value, key);
      if (u != "coupled" && u != "lda") throw UsageError("topic_update must be 'coupled' or 'lda'");
      c.topic_update = u == "coupled" ? TopicUpdate::kCoupled : TopicUpdate::kLdaConditional;
    } else if (key == "threshold") {
      c.threshold = get_as<double>(value, key);
    } else if (key == "svm") {
      for (const auto& [sk, sv] : value.items()) {
        if (sk == "C") {
          c.svm.C = get_as<double>(sv, sk);
        } else if (sk == "tol") {
          c.svm.tol = get_as<double>(sv, sk);
        } else if (sk == "max_iter") {
          c.svm.max_iter = get_as<int>(sv, sk);
        } else if (sk == "seed") {
          c.svm.seed = get_as<std::uint64_t>(sv, sk);
        } else {
          throw UsageError("unknown svm setting '" + sk + "'");
        }
      }
    } else if (key == "cv_folds") {
      c.cv_folds = get_as<int>(value, key);
    } else if (key == "feature_mode") {
      auto m = parse_feature_mode(get_as<std::string>(value, key));
      if (!m) throw UsageError("unknown feature_mode");
      c.feature_mode = *m;
    } else if (key == "seed") {
      c.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "topic_range") {
      c.topic_range = value.is_string() ? parse_topic_range(value.get<std::string>())
                                        : get_as<std::vector<int>>(value, key);
    } else if (key == "replicates") {
      c.replicates = get_as<int>(value, key);
    } else if (key == "jobs") {
      c.jobs = get_as<int>(value, key);
    } else if (key == "top_words") {
      c.top_words = get_as<int>(value, key);
    } else if (key == "output_dir") {
      c.output_dir = get_as<std::string>(value, key);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path.string() + "'");
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw UsageError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

std::shared_ptr<const BimodalCorpus> load_corpus(const ExperimentConfig& config,
                                                 PartitionScheme scheme) {
  const auto raw = load_annotated_corpus(config.corpus_path);
  if (config.model == ModelKind::kLda) {
    return std::make_shared<const BimodalCorpus>(apply_unimodal(raw, config.min_count));
  }
  return std::make_shared<const BimodalCorpus>(apply_partition(raw, scheme, config.min_count));
}

std::shared_ptr<const BimodalCorpus> load_corpus(const ExperimentConfig& config) {
  return load_corpus(config, config.scheme);
}

json to_json(const CvReport& r) {
  return {{"folds", r.folds},
          {"fold_accuracies", r.fold_accuracies},
          {"mean_accuracy", r.mean_accuracy},
          {"seed", r.seed},
          {"fold_assignment", r.fold_assignment}};
}

json to_json(const GroupReport& r) {
  json topics = json::array();
  for (const TopicRow& row : r.topics) {
    topics.push_back({{"topic", row.topic}, {"weight", row.weight}, {"top_words", row.top_words}});
  }
  return {{"aspect", r.aspect},
          {"viewpoint", std::string(to_string(r.viewpoint))},
          {"aspect_weight", r.aspect_weight},
          {"aspect_top_words", r.aspect_top_words},
          {"topics", topics},
          {"score", r.score}};
}

json to_json(const SweepReport& r) {
  json points = json::array();
  for (const SweepPoint& p : r.points) {
    json groups = json::array();
    for (const GroupReport& g : p.groups) groups.push_back(to_json(g));
    points.push_back({{"num_topics", p.num_topics},
                      {"seeds", p.seeds},
                      {"palestinian_score", p.palestinian_score},
                      {"israeli_score", p.israeli_score},
                      {"sign_conflict", p.sign_conflict},
                      {"neutral_topics", p.neutral_topics},
                      {"groups", groups}});
  }
  return {{"scheme", std::string(to_string(r.scheme))},
          {"separation", r.separation},
          {"overlap_points", r.overlap_points},
          {"points", points}};
}

json to_json(const CorpusStats& s) {
  return {{"docs", s.num_docs},
          {"topical_vocab", s.topical_vocab_size},
          {"opinion_vocab", s.opinion_vocab_size},
          {"topical_tokens", s.topical_tokens},
          {"opinion_tokens", s.opinion_tokens},
          {"palestinian_docs", s.palestinian_docs},
          {"israeli_docs", s.israeli_docs},
          {"unlabeled_docs", s.unlabeled_docs}};
}

namespace {

json provenance(const json& config) {
  return {{"config", config},
          {"seed", config.value("seed", json(nullptr))},
          {"code_version", kCodeVersion}};
}

void write_file(const fs::path& path, const std::string& content) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

// CSV files carry their provenance on a leading '#' comment line.
std::string csv_preamble(const json& config) { return "# " + provenance(config).dump() + "\n"; }

void append_run_log(const fs::path& dir, const std::string& command) {
  if (!dir.empty()) fs::create_directories(dir);
  std::ofstream log_file(dir / "run.log", std::ios::app);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  log_file << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << ' ' << command << " (corrview "
           << kCodeVersion << ")\n";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ChainOptions chain_options(const ExperimentConfig& c) {
  ChainOptions o;
  o.sweeps = c.effective_sweeps();
  o.average_last = c.average_last;
  o.average_cooccurrence = c.average_cooccurrence;
  return o;
}

SweepConfig sweep_config(const ExperimentConfig& c) {
  SweepConfig s;
  s.num_aspects = c.aspects;
  s.hyperparams = c.hyperparams;
  s.sweeps = c.effective_sweeps();
  s.average_last = c.average_last;
  s.average_cooccurrence = c.average_cooccurrence;
  s.threshold = c.threshold;
  s.svm = c.svm;
  s.seed = c.seed;
  s.replicates = c.replicates;
  s.jobs = c.jobs;
  s.topic_update = c.topic_update;
  return s;
}

struct RestoredModel {
  ExperimentConfig config;
  json config_json;
  std::shared_ptr<const BimodalCorpus> corpus;
  LoadedCheckpoint loaded;
};

RestoredModel restore(const fs::path& checkpoint) {
  std::ifstream in(checkpoint);
  if (!in) throw UsageError("cannot open checkpoint '" + checkpoint.string() + "'");
  const json j = read_checkpoint_json(in);
  RestoredModel r;
  r.config_json = j.value("config", json::object());
  r.config = ExperimentConfig::from_json(r.config_json);
  r.config.validate();
  r.corpus = load_corpus(r.config);
  r.loaded = restore_checkpoint(j, r.corpus);
  return r;
}

}  // namespace

fs::path cmd_stats(const ExperimentConfig& config) {
  config.validate();
  json per_scheme = json::object();
  for (PartitionScheme s : config.effective_schemes()) {
    per_scheme[std::string(to_string(s))] = to_json(corpus_stats(*load_corpus(config, s)));
  }
  json out = provenance(config.to_json());
  out["stats"] = per_scheme;
  const fs::path path = fs::path(config.output_dir) / "stats.json";
  write_json(path, out);
  append_run_log(config.output_dir, "stats");
  return path;
}

fs::path cmd_train(const ExperimentConfig& config) {
  config.validate();
  const json cfg = config.to_json();
  const auto corpus = load_corpus(config);
  ChainOptions options = chain_options(config);
  options.trace_log_likelihood = true;

  json checkpoint;
  std::vector<double> trace;
  if (config.model == ModelKind::kLda) {
    LdaRun run = run_lda(corpus, config.topics, config.hyperparams, config.seed, options);
    checkpoint = checkpoint_json(run.state, cfg);
    trace = std::move(run.log_likelihood);
  } else {
    CorrLda2Run run = run_corrlda2(corpus, config.topics, config.aspects, config.hyperparams,
                                   config.seed, options, config.topic_update);
    checkpoint = checkpoint_json(run.state, cfg);
    trace = std::move(run.log_likelihood);
  }

  const fs::path dir = config.output_dir;
  const fs::path path = dir / "checkpoint.json";
  std::ostringstream ck;
  save_checkpoint(ck, checkpoint);
  write_file(path, ck.str());

  std::string csv = csv_preamble(cfg) + "sweep,log_likelihood\n";
  for (std::size_t s = 0; s < trace.size(); ++s) {
    csv += std::to_string(s + 1) + "," + format_double(trace[s]) + "\n";
  }
  write_file(dir / "loglik.csv", csv);
  append_run_log(dir, "train");
  return path;
}

fs::path cmd_evaluate(const fs::path& checkpoint, std::optional<FeatureMode> mode,
                      const fs::path& output_dir) {
  RestoredModel r = restore(checkpoint);
  const FeatureMode m = mode.value_or(r.config.effective_feature_mode());
  if (r.loaded.lda && m != FeatureMode::kTopics) throw UsageError("LDA models only support topic features");
  FeatureMatrix fm = r.loaded.lda ? build_feature_matrix(*r.loaded.lda, m)
                                  : build_feature_matrix(*r.loaded.corrlda2, m);
  const CvReport report = cross_validate(fm, r.config.cv_folds, r.config.svm, r.config.seed);

  json out = provenance(r.config_json);
  out["model"] = r.loaded.model;
  out["feature_mode"] = std::string(to_string(m));
  out["features"] = fm.names;
  out["doc_ids"] = fm.doc_ids;
  out["cv"] = to_json(report);
  const fs::path path = output_dir / "cv_report.json";
  write_json(path, out);
  append_run_log(output_dir, "evaluate " + checkpoint.string());
  return path;
}

fs::path cmd_groups(const fs::path& checkpoint, const fs::path& output_dir) {
  RestoredModel r = restore(checkpoint);
  if (!r.loaded.corrlda2) throw UsageError("groups need a CorrLDA2 checkpoint");
  const CorrLda2State& state = *r.loaded.corrlda2;
  const TopicAspectGroups groups = form_groups(state.cooccurrence_frequencies(), r.config.threshold);
  const AssociationWeights weights = extract_association_weights(state, r.config.svm);
  std::vector<GroupReport> reports = classify_and_score(groups, weights.aspect, weights.topic);
  attach_top_words(reports, state, static_cast<std::size_t>(r.config.top_words));

  std::string text;
  json reports_json = json::array();
  for (const GroupReport& g : reports) {
    text += render_group_table(g) + "\n";
    reports_json.push_back(to_json(g));
  }
  text += "neutral topics:";
  for (int t : groups.neutral) text += " " + std::to_string(t + 1);
  text += "\n";

  json out = provenance(r.config_json);
  out["threshold"] = groups.threshold;
  out["groups"] = reports_json;
  out["neutral_topics"] = groups.neutral;
  write_file(output_dir / "groups.txt", text);
  const fs::path path = output_dir / "groups.json";
  write_json(path, out);

  std::ostringstream aspect_csv, topic_csv;
  aspect_csv << csv_preamble(r.config_json);
  topic_csv << csv_preamble(r.config_json);
  write_weight_csv(aspect_csv, weights.aspect_model, build_feature_matrix(state, FeatureMode::kAspects).names);
  write_weight_csv(topic_csv, weights.topic_model, build_feature_matrix(state, FeatureMode::kTopics).names);
  write_file(output_dir / "weights_aspects.csv", aspect_csv.str());
  write_file(output_dir / "weights_topics.csv", topic_csv.str());
  append_run_log(output_dir, "groups " + checkpoint.string());
  return path;
}

fs::path cmd_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.model != ModelKind::kCorrLda2) throw UsageError("sweep needs model corrlda2");
  if (config.topic_range.empty()) throw UsageError("sweep needs a topic_range");
  const json cfg = config.to_json();

  json reports = json::array();
  std::string csv = csv_preamble(cfg) + "T,scheme,pal_score,isr_score\n";
  for (PartitionScheme scheme : config.effective_schemes()) {
    const SweepReport report =
        consistency_sweep(load_corpus(config, scheme), scheme, config.topic_range, sweep_config(config));
    reports.push_back(to_json(report));
    for (const SweepPoint& p : report.points) {
      csv += std::to_string(p.num_topics) + "," + std::string(to_string(scheme)) + "," +
             format_double(p.palestinian_score) + "," + format_double(p.israeli_score) + "\n";
    }
  }
  json out = provenance(cfg);
  out["sweeps"] = reports;
  const fs::path dir = config.output_dir;
  const fs::path path = dir / "sweep.json";
  write_json(path, out);
  write_file(dir / "sweep.csv", csv);
  append_run_log(dir, "sweep");
  return path;
}

fs::path cmd_accuracy_curve(const ExperimentConfig& config) {
  config.validate();
  if (config.topic_range.empty()) throw UsageError("accuracy-curve needs a topic_range");
  const json cfg = config.to_json();
  const FeatureMode mode = config.effective_feature_mode();
  const std::vector<PartitionScheme> schemes =
      config.model == ModelKind::kLda ? std::vector<PartitionScheme>{config.scheme}
                                      : config.effective_schemes();

  std::string csv = csv_preamble(cfg) + "T,model,scheme,mode,mean_accuracy,fold_accuracies\n";
  for (PartitionScheme scheme : schemes) {
    const auto corpus = load_corpus(config, scheme);
    const std::vector<int>& range = config.topic_range;
    std::vector<CvReport> reports(range.size());
    std::vector<std::exception_ptr> errors(range.size());
    const ChainOptions options = chain_options(config);

#pragma omp parallel for schedule(dynamic) num_threads(config.jobs)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(range.size()); ++i) {
      try {
        const int T = range[static_cast<std::size_t>(i)];
        const std::uint64_t seed = sweep_point_seed(config.seed, T, 0);
        FeatureMatrix fm;
        if (config.model == ModelKind::kLda) {
          fm = run_lda(corpus, T, config.hyperparams, seed, options).features.build(mode);
        } else {
          fm = run_corrlda2(corpus, T, config.aspects, config.hyperparams, seed, options,
                            config.topic_update)
                   .features.build(mode);
        }
        reports[static_cast<std::size_t>(i)] = cross_validate(fm, config.cv_folds, config.svm, config.seed);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (std::size_t i = 0; i < range.size(); ++i) {
      std::string folds;
      for (double a : reports[i].fold_accuracies) {
        if (!folds.empty()) folds += ';';
        folds += format_double(a);
      }
      const std::string scheme_name =
          config.model == ModelKind::kLda ? "none" : std::string(to_string(scheme));
      csv += std::to_string(range[i]) + "," + std::string(to_string(config.model)) + "," +
             scheme_name + "," + std::string(to_string(mode)) + "," +
             format_double(reports[i].mean_accuracy) + "," + folds + "\n";
    }
  }
  const fs::path path = fs::path(config.output_dir) / "accuracy_curve.csv";
  write_file(path, csv);
  append_run_log(config.output_dir, "accuracy-curve");
  return path;
}

}  // namespace corrview
