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

#ifndef CLICKROLES_MODEL_H_
#define CLICKROLES_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickroles/features.h"

namespace clickroles {

// Dense row-major design matrix with binary labels.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> articles;
  std::vector<double> x;
  std::vector<uint8_t> y;

  size_t rows() const { return y.size(); }
  size_t cols() const { return feature_names.size(); }
  double at(size_t r, size_t c) const { return x[r * cols() + c]; }
  const double* row(size_t r) const { return x.data() + r * cols(); }

  Dataset Subset(std::span<const size_t> indices) const;
  Dataset WithLabels(std::vector<uint8_t> labels) const;
};

enum class FeatureGroup { kNetwork, kContentEdit, kTopic, kAll };
inline constexpr std::array<FeatureGroup, 4> kFeatureGroups = {
    FeatureGroup::kNetwork, FeatureGroup::kContentEdit, FeatureGroup::kTopic, FeatureGroup::kAll};

std::string_view FeatureGroupName(FeatureGroup g);
FeatureGroup ParseFeatureGroup(std::string_view name);

// searchshare: 1 iff value > threshold (search-dominated).
// resistance:  1 iff value <= threshold (relay).
uint8_t BinaryLabel(Target target, double value, double threshold);
std::vector<uint8_t> BinarizeTarget(std::span<const JoinedRow> rows, Target target,
                                    double threshold);
double DefaultThreshold(Target target);

// Network: in_degree, out_degree, kcore. Content/edit: revisions, editors,
// size, tables, figures, lists, sections, age. Topic: one-hot dominant
// topic over `topics` columns. Rows lacking a needed family are skipped.
Dataset BuildDataset(std::span<const JoinedRow> rows, Target target, double threshold,
                     FeatureGroup group, int topics);

// Downsamples the majority class uniformly (seeded) to the minority size.
// Returns sorted indices into `labels`. DomainError for single-class input.
std::vector<size_t> Balance(std::span<const uint8_t> labels, uint64_t seed);

struct GbdtConfig {
  int n_trees = 200;
  int max_depth = 4;
  double learning_rate = 0.1;
  size_t min_leaf = 20;
  double subsample = 1.0;
  uint64_t seed = 1;
  int threads = 0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf value before shrinkage
};

// Axis-aligned regression tree; rows with x[feature] <= threshold go left.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  double Predict(const double* row) const;
  int Depth() const;
};

struct GbdtModel {
  std::vector<std::string> feature_names;
  double learning_rate = 0.1;
  double initial_score = 0.0;
  std::vector<RegressionTree> trees;
  // No split was possible anywhere (e.g. all features constant); the model
  // predicts the class prior.
  bool degenerate = false;

  double RawScore(const double* row) const;
  double Probability(const double* row) const;
  std::vector<double> Predict(const Dataset& data, int threads = 0) const;

  bool operator==(const GbdtModel& other) const;
};

// Mean logistic loss of raw scores.
double LogisticLoss(std::span<const double> raw_scores, std::span<const uint8_t> labels);

// Stagewise boosting of regression trees on logistic-loss gradients with
// Newton leaf values. `stage_losses`, when given, receives the training
// loss before the first tree and after every tree.
GbdtModel TrainGbdt(const Dataset& data, const GbdtConfig& config,
                    std::vector<double>* stage_losses = nullptr);

// Best split of each tree node under construction.
struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
  bool operator==(const SplitCandidate&) const = default;
};

struct SplitProblem {
  const Dataset* data = nullptr;
  std::span<const double> grad;
  std::span<const double> hess;
  std::span<const int> node_of_row;  // -1: row is not in an open node
  int num_nodes = 0;
  size_t min_leaf = 1;
};

// Level-wise exact greedy search over presorted feature columns, parallel
// over features. `sorted_columns[f]` lists rows ascending by (x[f], row).
std::vector<SplitCandidate> FindBestSplits(const SplitProblem& problem,
                                           const std::vector<std::vector<uint32_t>>& sorted_columns,
                                           int threads = 0);
std::vector<std::vector<uint32_t>> PresortColumns(const Dataset& data, int threads = 0);

// Second-order gain of a split: G_L^2/(H_L+l) + G_R^2/(H_R+l) - G^2/(H+l).
double SplitGain(double g_left, double h_left, double g_right, double h_right);
inline constexpr double kHessianRegularizer = 1e-9;

namespace serial {
// Per-node sort-and-scan reference for FindBestSplits.
std::vector<SplitCandidate> FindBestSplits(const SplitProblem& problem);
}  // namespace serial

// Mann-Whitney rank statistic; tied scores contribute one half.
// DomainError unless both classes are present.
double RocAuc(std::span<const double> scores, std::span<const uint8_t> labels);

// Fold id per row; each class is shuffled (seeded) and dealt round-robin.
std::vector<int> StratifiedFolds(std::span<const uint8_t> labels, int folds, uint64_t seed);

struct EvalReport {
  std::string task;
  std::string feature_group;
  uint64_t seed = 0;
  std::vector<double> fold_auc;
  double mean_auc = 0.0;
};

// Stratified k-fold CV; each training fold is balanced before fitting and
// the held-out fold is scored as is. Folds train in parallel.
EvalReport CrossValidate(const Dataset& data, const GbdtConfig& config, int folds, uint64_t seed,
                         int threads = 0);

std::string FormatEvalReports(std::span<const EvalReport> reports);

// Versioned text format: header, scalars, then one line per tree node.
std::string SerializeModel(const GbdtModel& model);
GbdtModel ParseModel(std::string_view text);

}  // namespace clickroles

#endif  // CLICKROLES_MODEL_H_
