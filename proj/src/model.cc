// Copyright 2026 The clickroles Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clickroles/model.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>

#include "clickroles/errors.h"
#include "clickroles/io.h"
#include "clickroles/parallel.h"
#include "clickroles/rng.h"

namespace clickroles {

Dataset Dataset::Subset(std::span<const size_t> indices) const {
  Dataset out;
  out.feature_names = feature_names;
  const size_t p = cols();
  out.x.reserve(indices.size() * p);
  out.y.reserve(indices.size());
  for (size_t i : indices) {
    out.x.insert(out.x.end(), x.begin() + i * p, x.begin() + (i + 1) * p);
    out.y.push_back(y[i]);
    if (!articles.empty()) out.articles.push_back(articles[i]);
  }
  return out;
}

Dataset Dataset::WithLabels(std::vector<uint8_t> labels) const {
  if (labels.size() != rows()) throw UsageError("label vector length differs from row count");
  Dataset out = *this;
  out.y = std::move(labels);
  return out;
}

std::string_view FeatureGroupName(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kNetwork:
      return "network";
    case FeatureGroup::kContentEdit:
      return "content-edit";
    case FeatureGroup::kTopic:
      return "topic";
    case FeatureGroup::kAll:
      return "all";
  }
  return "all";
}

FeatureGroup ParseFeatureGroup(std::string_view name) {
  for (FeatureGroup g : kFeatureGroups) {
    if (FeatureGroupName(g) == name) return g;
  }
  throw UsageError("unknown feature group '" + std::string(name) +
                   "' (expected network, content-edit, topic or all)");
}

uint8_t BinaryLabel(Target target, double value, double threshold) {
  if (target == Target::kSearchshare) return value > threshold ? 1 : 0;
  return value <= threshold ? 1 : 0;
}

std::vector<uint8_t> BinarizeTarget(std::span<const JoinedRow> rows, Target target,
                                    double threshold) {
  std::vector<uint8_t> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back(BinaryLabel(target, r.Get(target), threshold));
  return labels;
}

double DefaultThreshold(Target target) { return target == Target::kSearchshare ? 0.66 : 0.88; }

Dataset BuildDataset(std::span<const JoinedRow> rows, Target target, double threshold,
                     FeatureGroup group, int topics) {
  const bool use_network = group == FeatureGroup::kNetwork || group == FeatureGroup::kAll;
  const bool use_content = group == FeatureGroup::kContentEdit || group == FeatureGroup::kAll;
  const bool use_topic = group == FeatureGroup::kTopic || group == FeatureGroup::kAll;
  static constexpr std::array<Feature, 3> kNet = {Feature::kInDegree, Feature::kOutDegree,
                                                  Feature::kKCore};
  static constexpr std::array<Feature, 8> kContent = {
      Feature::kRevisions, Feature::kEditors, Feature::kSize,     Feature::kTables,
      Feature::kFigures,   Feature::kLists,   Feature::kSections, Feature::kAge};
  Dataset d;
  if (use_network) {
    for (Feature f : kNet) d.feature_names.emplace_back(FeatureName(f));
  }
  if (use_content) {
    for (Feature f : kContent) d.feature_names.emplace_back(FeatureName(f));
  }
  if (use_topic) {
    if (topics < 1) throw UsageError("topic features need a positive topic count");
    for (int k = 0; k < topics; ++k) d.feature_names.push_back("topic_" + std::to_string(k));
  }
  for (const auto& r : rows) {
    if ((use_network && !r.network) || (use_content && !r.content) || (use_topic && !r.topic_id)) {
      continue;
    }
    if (use_network) {
      for (Feature f : kNet) d.x.push_back(*r.Get(f));
    }
    if (use_content) {
      for (Feature f : kContent) d.x.push_back(*r.Get(f));
    }
    if (use_topic) {
      if (*r.topic_id >= topics) {
        throw DataError("topic id " + std::to_string(*r.topic_id) + " of '" + r.article +
                        "' is outside [0, " + std::to_string(topics) + ")");
      }
      for (int k = 0; k < topics; ++k) d.x.push_back(k == *r.topic_id ? 1.0 : 0.0);
    }
    d.y.push_back(BinaryLabel(target, r.Get(target), threshold));
    d.articles.push_back(r.article);
  }
  return d;
}

std::vector<size_t> Balance(std::span<const uint8_t> labels, uint64_t seed) {
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) throw DomainError("balancing needs both classes present");
  auto& major = pos.size() > neg.size() ? pos : neg;
  const size_t keep = std::min(pos.size(), neg.size());
  Rng rng(seed);
  for (size_t i = 0; i < keep; ++i) {
    const size_t j = i + rng.Below(major.size() - i);
    std::swap(major[i], major[j]);
  }
  major.resize(keep);
  std::vector<size_t> out;
  out.reserve(2 * keep);
  out.insert(out.end(), pos.begin(), pos.end());
  out.insert(out.end(), neg.begin(), neg.end());
  std::sort(out.begin(), out.end());
  return out;
}

double RegressionTree::Predict(const double* row) const {
  int n = 0;
  while (nodes[n].feature >= 0) {
    n = row[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left : nodes[n].right;
  }
  return nodes[n].value;
}

int RegressionTree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int max_depth = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    max_depth = std::max(max_depth, depth[i]);
    if (nodes[i].feature >= 0) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  return max_depth;
}

double GbdtModel::RawScore(const double* row) const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.Predict(row);
  return initial_score + learning_rate * sum;
}

double GbdtModel::Probability(const double* row) const {
  return 1.0 / (1.0 + std::exp(-RawScore(row)));
}

std::vector<double> GbdtModel::Predict(const Dataset& data, int threads) const {
  std::vector<double> out(data.rows());
#pragma omp parallel for schedule(static) num_threads(ResolveThreads(threads))
  for (long i = 0; i < static_cast<long>(data.rows()); ++i) out[i] = Probability(data.row(i));
  return out;
}

bool GbdtModel::operator==(const GbdtModel& other) const {
  if (feature_names != other.feature_names || learning_rate != other.learning_rate ||
      initial_score != other.initial_score || degenerate != other.degenerate ||
      trees.size() != other.trees.size()) {
    return false;
  }
  for (size_t t = 0; t < trees.size(); ++t) {
    const auto& a = trees[t].nodes;
    const auto& b = other.trees[t].nodes;
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].feature != b[i].feature || a[i].threshold != b[i].threshold ||
          a[i].left != b[i].left || a[i].right != b[i].right || a[i].value != b[i].value) {
        return false;
      }
    }
  }
  return true;
}

namespace {

double Softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double PointLoss(double raw, uint8_t y) { return Softplus(raw) - (y ? raw : 0.0); }

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Threshold strictly between a < b such that a goes left and b goes right.
double Midpoint(double a, double b) {
  const double m = a + (b - a) / 2;
  return m < b ? m : a;
}

struct NodeTotals {
  double g = 0.0;
  double h = 0.0;
  size_t n = 0;
};

std::vector<NodeTotals> ComputeNodeTotals(const SplitProblem& p) {
  std::vector<NodeTotals> totals(p.num_nodes);
  for (size_t i = 0; i < p.node_of_row.size(); ++i) {
    const int nd = p.node_of_row[i];
    if (nd < 0) continue;
    totals[nd].g += p.grad[i];
    totals[nd].h += p.hess[i];
    ++totals[nd].n;
  }
  return totals;
}

struct ScanState {
  double g = 0.0;
  double h = 0.0;
  size_t n = 0;
  double last = 0.0;
};

// Feeds one row (in ascending feature order) into its node's scan.
inline void ScanRow(const SplitProblem& p, const NodeTotals& total, int feature, uint32_t row,
                    double value, ScanState* s, SplitCandidate* best) {
  if (s->n > 0 && value != s->last) {
    const size_t right = total.n - s->n;
    if (s->n >= p.min_leaf && right >= p.min_leaf) {
      const double gain = SplitGain(s->g, s->h, total.g - s->g, total.h - s->h);
      if (gain > best->gain) *best = SplitCandidate{gain, feature, Midpoint(s->last, value)};
    }
  }
  s->g += p.grad[row];
  s->h += p.hess[row];
  ++s->n;
  s->last = value;
}

}  // namespace

double SplitGain(double g_left, double h_left, double g_right, double h_right) {
  const double g = g_left + g_right;
  const double h = h_left + h_right;
  return g_left * g_left / (h_left + kHessianRegularizer) +
         g_right * g_right / (h_right + kHessianRegularizer) - g * g / (h + kHessianRegularizer);
}

double LogisticLoss(std::span<const double> raw_scores, std::span<const uint8_t> labels) {
  if (raw_scores.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < raw_scores.size(); ++i) sum += PointLoss(raw_scores[i], labels[i]);
  return sum / raw_scores.size();
}

std::vector<std::vector<uint32_t>> PresortColumns(const Dataset& data, int threads) {
  const size_t p = data.cols();
  std::vector<std::vector<uint32_t>> sorted(p);
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (long f = 0; f < static_cast<long>(p); ++f) {
    auto& order = sorted[f];
    order.resize(data.rows());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return data.at(a, f) < data.at(b, f); });
  }
  return sorted;
}

std::vector<SplitCandidate> FindBestSplits(const SplitProblem& problem,
                                           const std::vector<std::vector<uint32_t>>& sorted_columns,
                                           int threads) {
  const auto totals = ComputeNodeTotals(problem);
  const size_t p = problem.data->cols();
  std::vector<std::vector<SplitCandidate>> per_feature(
      p, std::vector<SplitCandidate>(problem.num_nodes));
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (long f = 0; f < static_cast<long>(p); ++f) {
    std::vector<ScanState> state(problem.num_nodes);
    auto& best = per_feature[f];
    for (uint32_t row : sorted_columns[f]) {
      const int nd = problem.node_of_row[row];
      if (nd < 0) continue;
      ScanRow(problem, totals[nd], static_cast<int>(f), row, problem.data->at(row, f), &state[nd],
              &best[nd]);
    }
  }
  // Fixed reduction order: the lowest feature index wins ties.
  std::vector<SplitCandidate> out(problem.num_nodes);
  for (int nd = 0; nd < problem.num_nodes; ++nd) {
    for (size_t f = 0; f < p; ++f) {
      if (per_feature[f][nd].gain > out[nd].gain) out[nd] = per_feature[f][nd];
    }
  }
  return out;
}

namespace serial {

std::vector<SplitCandidate> FindBestSplits(const SplitProblem& problem) {
  const auto totals = ComputeNodeTotals(problem);
  const Dataset& data = *problem.data;
  std::vector<SplitCandidate> out(problem.num_nodes);
  for (int nd = 0; nd < problem.num_nodes; ++nd) {
    std::vector<uint32_t> rows;
    for (size_t i = 0; i < problem.node_of_row.size(); ++i) {
      if (problem.node_of_row[i] == nd) rows.push_back(static_cast<uint32_t>(i));
    }
    for (size_t f = 0; f < data.cols(); ++f) {
      std::vector<uint32_t> order = rows;
      std::stable_sort(order.begin(), order.end(),
                       [&](uint32_t a, uint32_t b) { return data.at(a, f) < data.at(b, f); });
      ScanState state;
      SplitCandidate best;
      for (uint32_t row : order) {
        ScanRow(problem, totals[nd], static_cast<int>(f), row, data.at(row, f), &state, &best);
      }
      if (best.gain > out[nd].gain) out[nd] = best;
    }
  }
  return out;
}

}  // namespace serial

namespace {

// Newton step for one leaf, halved until the leaf's loss does not grow.
double LeafValue(std::span<const uint32_t> rows, std::span<const double> raw,
                 std::span<const uint8_t> y, std::span<const double> grad,
                 std::span<const double> hess, double learning_rate) {
  double g = 0.0, h = 0.0;
  for (uint32_t r : rows) {
    g += grad[r];
    h += hess[r];
  }
  double step = -g / (h + kHessianRegularizer);
  auto loss_at = [&](double delta) {
    double s = 0.0;
    for (uint32_t r : rows) s += PointLoss(raw[r] + delta, y[r]);
    return s;
  };
  const double base = loss_at(0.0);
  for (int i = 0; i < 60; ++i) {
    if (loss_at(learning_rate * step) <= base) return step;
    step /= 2;
  }
  return 0.0;
}

}  // namespace

GbdtModel TrainGbdt(const Dataset& data, const GbdtConfig& config,
                    std::vector<double>* stage_losses) {
  const size_t n = data.rows();
  size_t positives = 0;
  for (uint8_t v : data.y) positives += v;
  if (positives == 0 || positives == n) throw DomainError("boosting needs both classes present");
  if (config.max_depth < 1 || config.n_trees < 0 || config.learning_rate <= 0.0) {
    throw UsageError("invalid boosting configuration");
  }
  const int threads = ResolveThreads(config.threads);
  GbdtModel model;
  model.feature_names = data.feature_names;
  model.learning_rate = config.learning_rate;
  const double prior = static_cast<double>(positives) / n;
  model.initial_score = std::log(prior / (1.0 - prior));

  std::vector<double> raw(n, model.initial_score), grad(n), hess(n);
  if (stage_losses != nullptr) {
    stage_losses->clear();
    stage_losses->push_back(LogisticLoss(raw, data.y));
  }
  const auto sorted = PresortColumns(data, threads);
  Rng rng(config.seed);
  std::vector<int> node_of(n);
  std::vector<int> leaf_of(n);

  for (int t = 0; t < config.n_trees; ++t) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      const double pr = Sigmoid(raw[i]);
      grad[i] = pr - data.y[i];
      hess[i] = pr * (1.0 - pr);
    }
    std::fill(node_of.begin(), node_of.end(), 0);
    if (config.subsample < 1.0) {
      std::vector<size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      rng.Shuffle(std::span<size_t>(idx));
      const size_t keep = std::max<size_t>(1, static_cast<size_t>(config.subsample * n));
      for (size_t i = keep; i < n; ++i) node_of[idx[i]] = -1;
    }
    std::fill(leaf_of.begin(), leaf_of.end(), -1);

    RegressionTree tree;
    tree.nodes.emplace_back();
    std::vector<int> open = {0};  // level index -> tree node id
    for (int depth = 0; depth < config.max_depth && !open.empty(); ++depth) {
      SplitProblem problem{&data, grad, hess, node_of, static_cast<int>(open.size()),
                           std::max<size_t>(1, config.min_leaf)};
      const auto splits = FindBestSplits(problem, sorted, threads);
      std::vector<int> next_open;
      std::vector<int> left_index(open.size(), -1);
      for (size_t j = 0; j < open.size(); ++j) {
        if (splits[j].feature < 0) continue;
        const int id = open[j];
        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        tree.nodes[id].feature = splits[j].feature;
        tree.nodes[id].threshold = splits[j].threshold;
        tree.nodes[id].left = left;
        tree.nodes[id].right = left + 1;
        left_index[j] = static_cast<int>(next_open.size());
        next_open.push_back(left);
        next_open.push_back(left + 1);
      }
      for (size_t i = 0; i < n; ++i) {
        const int j = node_of[i];
        if (j < 0) continue;
        if (left_index[j] < 0) {
          leaf_of[i] = open[j];
          node_of[i] = -1;
          continue;
        }
        const auto& node = tree.nodes[open[j]];
        node_of[i] = left_index[j] + (data.at(i, node.feature) <= node.threshold ? 0 : 1);
      }
      open = std::move(next_open);
    }
    for (size_t i = 0; i < n; ++i) {
      if (node_of[i] >= 0) leaf_of[i] = open[node_of[i]];
    }
    if (tree.nodes.size() == 1) break;  // nothing left to split

    std::vector<std::vector<uint32_t>> leaf_rows(tree.nodes.size());
    for (size_t i = 0; i < n; ++i) {
      if (leaf_of[i] >= 0) leaf_rows[leaf_of[i]].push_back(static_cast<uint32_t>(i));
    }
    for (size_t id = 0; id < tree.nodes.size(); ++id) {
      if (tree.nodes[id].feature >= 0) continue;
      tree.nodes[id].value = LeafValue(leaf_rows[id], raw, data.y, grad, hess, config.learning_rate);
    }
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      raw[i] += config.learning_rate * tree.Predict(data.row(i));
    }
    model.trees.push_back(std::move(tree));
    if (stage_losses != nullptr) stage_losses->push_back(LogisticLoss(raw, data.y));
  }
  model.degenerate = model.trees.empty();
  return model;
}

double RocAuc(std::span<const double> scores, std::span<const uint8_t> labels) {
  if (scores.size() != labels.size()) throw UsageError("scores and labels differ in length");
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  int64_t positives = 0;
  int64_t twice_rank_sum = 0;  // sum over positives of 2 * average rank
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const int64_t twice_rank = static_cast<int64_t>(i + 1) + static_cast<int64_t>(j + 1);
    for (size_t k = i; k <= j; ++k) {
      if (labels[order[k]]) {
        ++positives;
        twice_rank_sum += twice_rank;
      }
    }
    i = j + 1;
  }
  const int64_t negatives = static_cast<int64_t>(n) - positives;
  if (positives == 0 || negatives == 0) throw DomainError("ROC AUC needs both classes present");
  const int64_t twice_u = twice_rank_sum - positives * (positives + 1);
  return static_cast<double>(twice_u) / static_cast<double>(2 * positives * negatives);
}

std::vector<int> StratifiedFolds(std::span<const uint8_t> labels, int folds, uint64_t seed) {
  if (folds < 2) throw UsageError("cross-validation needs at least 2 folds");
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < labels.size(); ++i) (labels[i] ? pos : neg).push_back(i);
  Rng pos_rng(DeriveSeed(seed, 1));
  Rng neg_rng(DeriveSeed(seed, 2));
  pos_rng.Shuffle(std::span<size_t>(pos));
  neg_rng.Shuffle(std::span<size_t>(neg));
  std::vector<int> fold(labels.size());
  for (size_t i = 0; i < pos.size(); ++i) fold[pos[i]] = static_cast<int>(i % folds);
  for (size_t i = 0; i < neg.size(); ++i) fold[neg[i]] = static_cast<int>((pos.size() + i) % folds);
  return fold;
}

EvalReport CrossValidate(const Dataset& data, const GbdtConfig& config, int folds, uint64_t seed,
                         int threads) {
  size_t positives = 0;
  for (uint8_t v : data.y) positives += v;
  const size_t negatives = data.rows() - positives;
  if (positives < static_cast<size_t>(folds) || negatives < static_cast<size_t>(folds)) {
    throw DomainError("cross-validation needs at least " + std::to_string(folds) +
                      " instances per class (have " + std::to_string(positives) + " positive, " +
                      std::to_string(negatives) + " negative)");
  }
  const auto fold_of = StratifiedFolds(data.y, folds, seed);
  EvalReport report;
  report.seed = seed;
  report.fold_auc.assign(folds, 0.0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (int k = 0; k < folds; ++k) {
    try {
      std::vector<size_t> train, test;
      for (size_t i = 0; i < data.rows(); ++i) (fold_of[i] == k ? test : train).push_back(i);
      const Dataset train_all = data.Subset(train);
      const auto keep = Balance(train_all.y, DeriveSeed(seed, 100 + k));
      const Dataset train_set = train_all.Subset(keep);
      GbdtConfig fold_config = config;
      fold_config.threads = 1;
      fold_config.seed = DeriveSeed(config.seed, 200 + k);
      const GbdtModel model = TrainGbdt(train_set, fold_config);
      const Dataset test_set = data.Subset(test);
      report.fold_auc[k] = RocAuc(model.Predict(test_set, 1), test_set.y);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  double sum = 0.0;
  for (double a : report.fold_auc) sum += a;
  report.mean_auc = sum / folds;
  return report;
}

std::string FormatEvalReports(std::span<const EvalReport> reports) {
  std::string out = "task,feature_group,fold,auc\n";
  for (const auto& r : reports) {
    for (size_t k = 0; k < r.fold_auc.size(); ++k) {
      out += r.task + "," + r.feature_group + "," + std::to_string(k) + "," +
             FormatDouble(r.fold_auc[k]) + "\n";
    }
    out += r.task + "," + r.feature_group + ",mean," + FormatDouble(r.mean_auc) + "\n";
  }
  return out;
}

std::string SerializeModel(const GbdtModel& model) {
  std::string out = "clickroles-gbdt 1\n";
  out += "loss logistic\n";
  out += "learning_rate " + FormatDouble(model.learning_rate) + "\n";
  out += "initial_score " + FormatDouble(model.initial_score) + "\n";
  out += "degenerate " + std::to_string(model.degenerate ? 1 : 0) + "\n";
  out += "features " + std::to_string(model.feature_names.size());
  for (const auto& f : model.feature_names) out += " " + f;
  out += "\ntrees " + std::to_string(model.trees.size()) + "\n";
  for (size_t t = 0; t < model.trees.size(); ++t) {
    const auto& nodes = model.trees[t].nodes;
    out += "tree " + std::to_string(t) + " " + std::to_string(nodes.size()) + "\n";
    for (size_t i = 0; i < nodes.size(); ++i) {
      const auto& nd = nodes[i];
      out += "node " + std::to_string(i) + " " + std::to_string(nd.feature) + " " +
             FormatDouble(nd.threshold) + " " + std::to_string(nd.left) + " " +
             std::to_string(nd.right) + " " + FormatDouble(nd.value) + "\n";
    }
  }
  return out;
}

GbdtModel ParseModel(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& what) -> DataError { return DataError("model file: " + what); };
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "clickroles-gbdt" || version != 1) {
    throw fail("unsupported header");
  }
  GbdtModel m;
  std::string loss;
  int degenerate = 0;
  size_t n_features = 0, n_trees = 0;
  std::string lr, init;
  if (!(in >> word >> loss) || word != "loss" || loss != "logistic") throw fail("expected loss");
  if (!(in >> word >> lr) || word != "learning_rate") throw fail("expected learning_rate");
  if (!(in >> word >> init) || word != "initial_score") throw fail("expected initial_score");
  if (!(in >> word >> degenerate) || word != "degenerate") throw fail("expected degenerate");
  if (!(in >> word >> n_features) || word != "features") throw fail("expected features");
  auto lr_v = ParseDouble(lr);
  auto init_v = ParseDouble(init);
  if (!lr_v || !init_v) throw fail("bad scalar");
  m.learning_rate = *lr_v;
  m.initial_score = *init_v;
  m.degenerate = degenerate != 0;
  m.feature_names.resize(n_features);
  for (auto& f : m.feature_names) {
    if (!(in >> f)) throw fail("truncated feature list");
  }
  if (!(in >> word >> n_trees) || word != "trees") throw fail("expected trees");
  m.trees.resize(n_trees);
  for (size_t t = 0; t < n_trees; ++t) {
    size_t index = 0, count = 0;
    if (!(in >> word >> index >> count) || word != "tree" || index != t) throw fail("bad tree header");
    auto& nodes = m.trees[t].nodes;
    nodes.resize(count);
    for (size_t i = 0; i < count; ++i) {
      size_t id = 0;
      std::string thr, value;
      auto& nd = nodes[i];
      if (!(in >> word >> id >> nd.feature >> thr >> nd.left >> nd.right >> value) ||
          word != "node" || id != i) {
        throw fail("bad node line in tree " + std::to_string(t));
      }
      auto thr_v = ParseDouble(thr);
      auto value_v = ParseDouble(value);
      if (!thr_v || !value_v) throw fail("bad node value");
      nd.threshold = *thr_v;
      nd.value = *value_v;
      const int limit = static_cast<int>(count);
      if (nd.feature >= static_cast<int>(n_features) ||
          (nd.feature >= 0 && (nd.left <= static_cast<int>(i) || nd.left >= limit ||
                              nd.right <= static_cast<int>(i) || nd.right >= limit))) {
        throw fail("node references out of range");
      }
    }
  }
  return m;
}

}  // namespace clickroles
