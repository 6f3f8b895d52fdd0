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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "clickroles/errors.h"
#include "oracles.h"

namespace clickroles {
namespace {

Dataset RandomDataset(size_t n, size_t cols, uint64_t seed, int levels = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(0, levels - 1);
  std::bernoulli_distribution noise(0.2);
  Dataset d;
  for (size_t c = 0; c < cols; ++c) d.feature_names.push_back("f" + std::to_string(c));
  for (size_t i = 0; i < n; ++i) {
    d.articles.push_back("a" + std::to_string(i));
    for (size_t c = 0; c < cols; ++c) d.x.push_back(v(rng));
    const bool signal = d.x[i * cols] + (cols > 1 ? d.x[i * cols + 1] : 0) > levels - 1;
    d.y.push_back(static_cast<uint8_t>(signal != noise(rng)));
  }
  return d;
}

TEST(LabelTest, ThresholdBoundaries) {
  EXPECT_EQ(BinaryLabel(Target::kSearchshare, 0.66, 0.66), 0);
  EXPECT_EQ(BinaryLabel(Target::kSearchshare, 0.661, 0.66), 1);
  EXPECT_EQ(BinaryLabel(Target::kResistance, 0.88, 0.88), 1);
  EXPECT_EQ(BinaryLabel(Target::kResistance, 0.881, 0.88), 0);
  EXPECT_EQ(DefaultThreshold(Target::kSearchshare), 0.66);
  EXPECT_EQ(DefaultThreshold(Target::kResistance), 0.88);
}

TEST(BalanceTest, EqualClassesSortedDeterministic) {
  std::vector<uint8_t> y(100, 0);
  for (int i = 0; i < 30; ++i) y[i * 3] = 1;
  const auto idx = Balance(y, 4);
  EXPECT_EQ(idx.size(), 60u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  size_t pos = 0;
  for (size_t i : idx) pos += y[i];
  EXPECT_EQ(pos, 30u);
  EXPECT_EQ(idx, Balance(y, 4));
  EXPECT_THROW(Balance(std::vector<uint8_t>(5, 1), 1), DomainError);
}

TEST(BuildDatasetTest, ColumnsAndOneHot) {
  JoinedRow r;
  r.article = "A";
  r.searchshare = 0.9;
  r.resistance = 0.5;
  r.network = NetworkFeatures{"A", 3, 4, 7, 2};
  r.content = ContentFeatures{1, 2, 3, 4, 5, 6, 7, 8};
  r.topic_id = 2;
  JoinedRow bare;
  bare.article = "B";
  const std::vector<JoinedRow> rows = {r, bare};
  const Dataset net = BuildDataset(rows, Target::kSearchshare, 0.66, FeatureGroup::kNetwork, 3);
  ASSERT_EQ(net.rows(), 1u);
  EXPECT_EQ(net.feature_names, (std::vector<std::string>{"in_degree", "out_degree", "kcore"}));
  EXPECT_EQ(net.x, (std::vector<double>{3, 4, 2}));
  EXPECT_EQ(net.y[0], 1);
  const Dataset topic = BuildDataset(rows, Target::kResistance, 0.88, FeatureGroup::kTopic, 3);
  EXPECT_EQ(topic.x, (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(topic.y[0], 1);
  const Dataset all = BuildDataset(rows, Target::kResistance, 0.88, FeatureGroup::kAll, 3);
  EXPECT_EQ(all.cols(), 3u + 8u + 3u);
}

TEST(TrainGbdtTest, SingleStumpMatchesOracle) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Dataset d = RandomDataset(60, 3, seed);
    const auto stump = oracle::BestStump(d, 1);
    GbdtConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.min_leaf = 1;
    cfg.threads = 1;
    const GbdtModel m = TrainGbdt(d, cfg);
    ASSERT_EQ(m.trees.size(), 1u);
    const auto& root = m.trees[0].nodes[0];
    EXPECT_EQ(root.feature, stump.feature);
    EXPECT_EQ(root.threshold, stump.threshold);
    EXPECT_NEAR(m.trees[0].nodes[root.left].value, stump.left_value, 1e-9);
    EXPECT_NEAR(m.trees[0].nodes[root.right].value, stump.right_value, 1e-9);
  }
}

TEST(TrainGbdtTest, ConstantFeaturesPredictPrior) {
  Dataset d;
  d.feature_names = {"c"};
  for (int i = 0; i < 40; ++i) {
    d.articles.push_back("a" + std::to_string(i));
    d.x.push_back(1.0);
    d.y.push_back(i < 10);
  }
  const GbdtModel m = TrainGbdt(d, GbdtConfig{});
  EXPECT_TRUE(m.degenerate);
  EXPECT_NEAR(m.Probability(d.row(0)), 0.25, 1e-12);
}

TEST(TrainGbdtTest, SeparableReachesPerfectAuc) {
  Dataset d;
  d.feature_names = {"x"};
  for (int i = 0; i < 200; ++i) {
    d.articles.push_back("a" + std::to_string(i));
    d.x.push_back(i);
    d.y.push_back(i >= 120);
  }
  GbdtConfig cfg;
  cfg.n_trees = 20;
  const GbdtModel m = TrainGbdt(d, cfg);
  EXPECT_EQ(RocAuc(m.Predict(d), d.y), 1.0);
}

TEST(TrainGbdtTest, TrainingLossNonIncreasing) {
  const Dataset d = RandomDataset(500, 4, 3);
  GbdtConfig cfg;
  cfg.n_trees = 50;
  cfg.learning_rate = 0.5;
  cfg.min_leaf = 5;
  std::vector<double> losses;
  TrainGbdt(d, cfg, &losses);
  ASSERT_EQ(losses.size(), 51u);
  for (size_t i = 1; i < losses.size(); ++i) {
    EXPECT_LE(losses[i], losses[i - 1] * (1 + 1e-12)) << "stage " << i;
  }
}

TEST(TrainGbdtTest, DeterministicAcrossThreads) {
  const Dataset d = RandomDataset(800, 5, 11, 20);
  GbdtConfig cfg;
  cfg.n_trees = 15;
  cfg.subsample = 0.8;
  cfg.threads = 1;
  const GbdtModel one = TrainGbdt(d, cfg);
  for (int t : {2, 4, 7}) {
    cfg.threads = t;
    EXPECT_EQ(TrainGbdt(d, cfg), one);
  }
}

TEST(FindBestSplitsTest, ParallelMatchesSerial) {
  const Dataset d = RandomDataset(700, 6, 5, 15);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 1);
  std::uniform_real_distribution<double> h(0.05, 0.25);
  std::uniform_int_distribution<int> node(-1, 3);
  std::vector<double> grad(d.rows()), hess(d.rows());
  std::vector<int> node_of(d.rows());
  for (size_t i = 0; i < d.rows(); ++i) {
    grad[i] = g(rng);
    hess[i] = h(rng);
    node_of[i] = node(rng);
  }
  const auto sorted = PresortColumns(d, 3);
  for (size_t min_leaf : {1u, 10u, 200u}) {
    const SplitProblem p{&d, grad, hess, node_of, 4, min_leaf};
    const auto ref = serial::FindBestSplits(p);
    for (int t : {1, 2, 6}) EXPECT_EQ(FindBestSplits(p, sorted, t), ref);
  }
}

TEST(RocAucTest, MatchesPairCountingOracle) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> s(0, 9);
  std::bernoulli_distribution lab(0.4);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<double> scores;
    std::vector<uint8_t> labels;
    for (int i = 0; i < 150; ++i) {
      scores.push_back(s(rng));
      labels.push_back(lab(rng));
    }
    labels[0] = 1;
    labels[1] = 0;
    EXPECT_EQ(RocAuc(scores, labels), oracle::PairCountingAuc(scores, labels));
    std::vector<double> transformed;
    for (double x : scores) transformed.push_back(std::exp(x) * 3 - 1);
    EXPECT_EQ(RocAuc(transformed, labels), RocAuc(scores, labels));
  }
}

TEST(RocAucTest, Examples) {
  const std::vector<uint8_t> y = {0, 0, 1, 1};
  EXPECT_EQ(RocAuc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, y), 1.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, y), 0.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, y), 0.5);
  EXPECT_THROW(RocAuc(std::vector<double>{0.1, 0.2}, std::vector<uint8_t>{1, 1}), DomainError);
}

TEST(StratifiedFoldsTest, PartitionAndBalance) {
  std::vector<uint8_t> y(103, 0);
  for (int i = 0; i < 41; ++i) y[i * 2] = 1;
  const auto folds = StratifiedFolds(y, 5, 3);
  ASSERT_EQ(folds.size(), y.size());
  std::vector<int> pos(5, 0), all(5, 0);
  for (size_t i = 0; i < y.size(); ++i) {
    ASSERT_GE(folds[i], 0);
    ASSERT_LT(folds[i], 5);
    pos[folds[i]] += y[i];
    ++all[folds[i]];
  }
  EXPECT_LE(*std::max_element(pos.begin(), pos.end()) - *std::min_element(pos.begin(), pos.end()), 1);
  EXPECT_LE(*std::max_element(all.begin(), all.end()) - *std::min_element(all.begin(), all.end()), 1);
  EXPECT_EQ(folds, StratifiedFolds(y, 5, 3));
}

TEST(CrossValidateTest, SeparableNearOneShuffledNearHalf) {
  Dataset d;
  d.feature_names = {"x", "noise"};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    d.articles.push_back("a" + std::to_string(i));
    const double x = u(rng);
    d.x.push_back(x);
    d.x.push_back(u(rng));
    d.y.push_back(x > 0.7);
  }
  GbdtConfig cfg;
  cfg.n_trees = 30;
  const EvalReport good = CrossValidate(d, cfg, 5, 1, 4);
  ASSERT_EQ(good.fold_auc.size(), 5u);
  EXPECT_GE(good.mean_auc, 0.99);

  std::vector<uint8_t> shuffled = d.y;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const EvalReport bad = CrossValidate(d.WithLabels(shuffled), cfg, 5, 1, 4);
  EXPECT_NEAR(bad.mean_auc, 0.5, 0.06);
  EXPECT_EQ(CrossValidate(d, cfg, 5, 1, 1).fold_auc, good.fold_auc);
}

TEST(SerializeModelTest, RoundTrip) {
  const Dataset d = RandomDataset(300, 3, 9);
  GbdtConfig cfg;
  cfg.n_trees = 10;
  const GbdtModel m = TrainGbdt(d, cfg);
  const GbdtModel back = ParseModel(SerializeModel(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.Predict(d), m.Predict(d));
  EXPECT_THROW(ParseModel("not a model"), DataError);
}

}  // namespace
}  // namespace clickroles
