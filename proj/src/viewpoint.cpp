#include "corrview/viewpoint.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>

#include <omp.h>

#include "corrview/errors.hpp"
#include "corrview/log.hpp"
#include "corrview/training.hpp"

namespace corrview {

TopicAspectGroups form_groups(const Cooccurrence& cooccurrence, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw ParameterError("grouping threshold must lie in (0, 1]");
  }
  const std::size_t A = cooccurrence.freq.rows;
  const std::size_t T = cooccurrence.freq.cols;
  if (cooccurrence.zero_column.size() != T) throw ParameterError("zero-column flags missing");
  if (A >= 2 && threshold <= 1.0 / static_cast<double>(A)) {
    log::warn("grouping threshold " + std::to_string(threshold) +
              " does not guarantee disjoint groups");
  }

  TopicAspectGroups g;
  g.threshold = threshold;
  g.groups.resize(A);
  for (std::size_t t = 0; t < T; ++t) {
    bool grouped = false;
    if (!cooccurrence.zero_column[t]) {
      for (std::size_t a = 0; a < A; ++a) {
        if (cooccurrence.freq(a, t) > threshold) {
          g.groups[a].push_back(static_cast<int>(t));
          grouped = true;
          break;  // first qualifying aspect; only reachable twice below 1/2
        }
      }
    }
    if (!grouped) g.neutral.push_back(static_cast<int>(t));
  }
  return g;
}

AssociationWeights extract_association_weights(const FeatureMatrix& aspect_features,
                                               const FeatureMatrix& topic_features,
                                               const SvmConfig& config) {
  AssociationWeights out;
  out.aspect_model = train_svm(aspect_features, config);
  out.topic_model = train_svm(topic_features, config);
  out.aspect = out.aspect_model.w;
  out.topic = out.topic_model.w;
  return out;
}

AssociationWeights extract_association_weights(const CorrLda2State& state,
                                               const SvmConfig& config) {
  return extract_association_weights(build_feature_matrix(state, FeatureMode::kAspects),
                                     build_feature_matrix(state, FeatureMode::kTopics), config);
}

std::vector<GroupReport> classify_and_score(const TopicAspectGroups& groups,
                                            std::span<const double> aspect_weights,
                                            std::span<const double> topic_weights) {
  if (aspect_weights.size() != groups.groups.size()) {
    throw ParameterError("one aspect weight per group is required");
  }
  std::vector<GroupReport> reports;
  for (std::size_t a = 0; a < groups.groups.size(); ++a) {
    GroupReport r;
    r.aspect = static_cast<int>(a);
    r.aspect_weight = aspect_weights[a];
    r.viewpoint = r.aspect_weight < 0.0 ? Viewpoint::kPalestinian : Viewpoint::kIsraeli;
    for (int t : groups.groups[a]) {
      if (t < 0 || static_cast<std::size_t>(t) >= topic_weights.size()) {
        throw ParameterError("topic id outside the topic weight vector");
      }
      r.topics.push_back({t, topic_weights[t], {}});
    }
    const bool ascending = r.viewpoint == Viewpoint::kPalestinian;
    std::stable_sort(r.topics.begin(), r.topics.end(), [ascending](const TopicRow& x, const TopicRow& y) {
      return ascending ? x.weight < y.weight : x.weight > y.weight;
    });
    for (const TopicRow& row : r.topics) r.score += row.weight;
    reports.push_back(std::move(r));
  }
  return reports;
}

void attach_top_words(std::vector<GroupReport>& reports, const CorrLda2State& state, std::size_t k) {
  const Matrix phi = state.phi();
  const Matrix phi_tilde = state.phi_tilde();
  const BimodalCorpus& corpus = state.corpus();
  for (GroupReport& r : reports) {
    r.aspect_top_words.clear();
    if (phi_tilde.cols > 0) {
      for (const auto& [id, p] : top_words(phi_tilde.row(static_cast<std::size_t>(r.aspect)), k)) {
        r.aspect_top_words.push_back(corpus.opinion_vocab.word(static_cast<std::size_t>(id)));
      }
    }
    for (TopicRow& row : r.topics) {
      row.top_words.clear();
      if (phi.cols == 0) continue;
      for (const auto& [id, p] : top_words(phi.row(static_cast<std::size_t>(row.topic)), k)) {
        row.top_words.push_back(corpus.topical_vocab.word(static_cast<std::size_t>(id)));
      }
    }
  }
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::string render_group_table(const GroupReport& report) {
  std::vector<std::string> labels{"Aspect " + std::to_string(report.aspect + 1)};
  for (const TopicRow& row : report.topics) labels.push_back("Topic " + std::to_string(row.topic + 1));
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.size());

  std::ostringstream os;
  char line[64];
  os << "viewpoint: " << to_string(report.viewpoint) << '\n';
  std::snprintf(line, sizeof line, "%-*s  %10s  ", static_cast<int>(width), "", "SVM weight");
  os << line << "Top words\n";
  std::snprintf(line, sizeof line, "%-*s  %10.2f  ", static_cast<int>(width), labels[0].c_str(),
                report.aspect_weight);
  os << line << join(report.aspect_top_words) << '\n';
  for (std::size_t i = 0; i < report.topics.size(); ++i) {
    std::snprintf(line, sizeof line, "%-*s  %10.2f  ", static_cast<int>(width),
                  labels[i + 1].c_str(), report.topics[i].weight);
    os << line << join(report.topics[i].top_words) << '\n';
  }
  std::snprintf(line, sizeof line, "score: %.2f", report.score);
  os << line << '\n';
  return os.str();
}

GroupPair pair_groups(const std::vector<GroupReport>& reports) {
  if (reports.size() < 2) throw ParameterError("at least two groups are needed for a pair");
  GroupPair p;
  p.palestinian = &reports.front();
  p.israeli = &reports.front();
  for (const GroupReport& r : reports) {
    if (r.aspect_weight < p.palestinian->aspect_weight) p.palestinian = &r;
    if (r.aspect_weight > p.israeli->aspect_weight) p.israeli = &r;
  }
  if (p.palestinian == p.israeli) p.israeli = &reports[p.palestinian == &reports[0] ? 1 : 0];
  p.sign_conflict = p.palestinian->viewpoint != Viewpoint::kPalestinian ||
                    p.israeli->viewpoint != Viewpoint::kIsraeli;
  return p;
}

std::uint64_t sweep_point_seed(std::uint64_t base, int num_topics, int replicate) {
  return stream_seed(base, (static_cast<std::uint64_t>(num_topics) << 20) |
                               static_cast<std::uint64_t>(replicate));
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void summarize_sweep(SweepReport& report) {
  report.overlap_points.clear();
  double min_isr = std::numeric_limits<double>::infinity();
  double max_pal = -std::numeric_limits<double>::infinity();
  for (const SweepPoint& p : report.points) {
    min_isr = std::min(min_isr, p.israeli_score);
    max_pal = std::max(max_pal, p.palestinian_score);
    if (p.palestinian_score >= p.israeli_score) report.overlap_points.push_back(p.num_topics);
  }
  report.separation = report.points.empty() ? 0.0 : min_isr - max_pal;
}

SweepReport consistency_sweep(std::shared_ptr<const BimodalCorpus> corpus, PartitionScheme scheme,
                              std::span<const int> topic_counts, const SweepConfig& config) {
  if (topic_counts.empty()) throw ParameterError("topic range must not be empty");
  if (config.num_aspects < 2) throw ParameterError("the sweep needs at least two aspects");
  if (config.replicates < 1) throw ParameterError("replicates must be >= 1");
  if (config.jobs < 1) throw ParameterError("jobs must be >= 1");
  for (int t : topic_counts) {
    if (t < 1) throw ParameterError("topic counts must be >= 1");
  }

  SweepReport report;
  report.scheme = scheme;
  report.points.resize(topic_counts.size());

  // One task per (point, replicate); each owns its chain and solvers.
  const int R = config.replicates;
  const auto n_tasks = static_cast<std::int64_t>(topic_counts.size()) * R;
  std::vector<std::vector<GroupReport>> task_groups(static_cast<std::size_t>(n_tasks));
  std::vector<std::vector<int>> task_neutral(static_cast<std::size_t>(n_tasks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_tasks));

  ChainOptions options;
  options.sweeps = config.sweeps;
  options.average_last = config.average_last;
  options.average_cooccurrence = config.average_cooccurrence;

#pragma omp parallel for schedule(dynamic) num_threads(config.jobs)
  for (std::int64_t task = 0; task < n_tasks; ++task) {
    try {
      const int T = topic_counts[static_cast<std::size_t>(task / R)];
      const int r = static_cast<int>(task % R);
      CorrLda2Run run = run_corrlda2(corpus, T, config.num_aspects, config.hyperparams,
                                     sweep_point_seed(config.seed, T, r), options,
                                     config.topic_update);
      TopicAspectGroups groups = form_groups(run.cooccurrence(), config.threshold);
      AssociationWeights weights =
          extract_association_weights(run.features.build(FeatureMode::kAspects),
                                      run.features.build(FeatureMode::kTopics), config.svm);
      std::vector<GroupReport> reports = classify_and_score(groups, weights.aspect, weights.topic);
      attach_top_words(reports, run.state);
      task_groups[static_cast<std::size_t>(task)] = std::move(reports);
      task_neutral[static_cast<std::size_t>(task)] = std::move(groups.neutral);
    } catch (...) {
      errors[static_cast<std::size_t>(task)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < topic_counts.size(); ++i) {
    SweepPoint& p = report.points[i];
    p.num_topics = topic_counts[i];
    p.scheme = scheme;
    std::vector<double> pal, isr;
    for (int r = 0; r < R; ++r) {
      const std::size_t task = i * static_cast<std::size_t>(R) + static_cast<std::size_t>(r);
      p.seeds.push_back(sweep_point_seed(config.seed, p.num_topics, r));
      const GroupPair pair = pair_groups(task_groups[task]);
      pal.push_back(pair.palestinian->score);
      isr.push_back(pair.israeli->score);
      p.sign_conflict = p.sign_conflict || pair.sign_conflict;
    }
    p.groups = std::move(task_groups[i * static_cast<std::size_t>(R)]);
    p.neutral_topics = std::move(task_neutral[i * static_cast<std::size_t>(R)]);
    p.palestinian_score = median(pal);
    p.israeli_score = median(isr);
  }
  summarize_sweep(report);
  return report;
}

}  // namespace corrview
