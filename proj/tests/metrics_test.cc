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

#include "clickroles/metrics.h"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "clickroles/errors.h"
#include "oracles.h"

namespace clickroles {
namespace {

ArticleTraffic Traffic(uint64_t in_se, uint64_t in_nav, uint64_t out_nav) {
  return ArticleTraffic{"a", in_se, in_nav, out_nav, in_se + in_nav};
}

TEST(SearchshareTest, Examples) {
  EXPECT_DOUBLE_EQ(Searchshare(Traffic(3, 1, 0)), 0.75);
  EXPECT_EQ(Searchshare(Traffic(0, 7, 0)), 0.0);
  EXPECT_THROW(Searchshare(Traffic(0, 0, 5)), DomainError);
}

TEST(ResistanceTest, Examples) {
  EXPECT_EQ(Resistance(Traffic(60, 40, 0)), 1.0);
  EXPECT_EQ(Resistance(Traffic(60, 40, 150)), 0.0);
  EXPECT_DOUBLE_EQ(Resistance(Traffic(60, 40, 25)), 0.75);
  EXPECT_THROW(Resistance(Traffic(0, 0, 1)), DomainError);
}

TEST(MetricsPropertyTest, ComplementAndScaling) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<uint64_t> count(0, 100000);
  std::uniform_int_distribution<uint64_t> scale(1, 1000);
  for (int i = 0; i < 20000; ++i) {
    auto t = Traffic(count(rng), count(rng), count(rng));
    if (t.total_views == 0) continue;
    const double nav_share = static_cast<double>(t.in_nav) / t.total_views;
    EXPECT_NEAR(Searchshare(t) + nav_share, 1.0, 1e-15);
    const uint64_t k = scale(rng);
    const auto scaled = Traffic(t.in_se * k, t.in_nav * k, t.out_nav * k);
    EXPECT_EQ(Searchshare(scaled), Searchshare(t));
    EXPECT_EQ(Resistance(scaled), Resistance(t));
    EXPECT_GE(Resistance(t), 0.0);
    EXPECT_LE(Resistance(t), 1.0);
  }
}

TEST(ComputeMetricsTest, KeepsTitlesAndSkipsZeroInflow) {
  const TrafficTable table = {{"A", 50, 0, 20, 50}, {"B", 0, 0, 4, 0}, {"C", 30, 20, 0, 50}};
  size_t skipped = 0;
  const auto m = ComputeMetrics(table, 2, &skipped);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].article, "A");
  EXPECT_EQ(m[1].article, "C");
  EXPECT_EQ(m[0].resistance, 0.6);
  EXPECT_EQ(skipped, 1u);
}

TEST(ThresholdTest, Means) {
  std::vector<TrafficMetrics> m = {{"a", 0.2, 1.0, 1}, {"b", 0.8, 0.5, 1}};
  auto t = ComputeThresholds(m);
  EXPECT_DOUBLE_EQ(t.mean_searchshare, 0.5);
  EXPECT_DOUBLE_EQ(t.mean_resistance, 0.75);
  m.resize(1);
  t = ComputeThresholds(m);
  EXPECT_EQ(t.mean_searchshare, 0.2);
  EXPECT_EQ(t.mean_resistance, 1.0);
  EXPECT_THROW(ComputeThresholds({}), DomainError);
}

TEST(QuadrantTest, Rules) {
  const CorpusThresholds t{0.66, 0.88};
  EXPECT_EQ(AssignQuadrant({"a", 0.9, 0.2, 1}, t), Quadrant::kSearchRelay);
  EXPECT_EQ(AssignQuadrant({"a", 0.9, 0.95, 1}, t), Quadrant::kSearchExit);
  EXPECT_EQ(AssignQuadrant({"a", 0.1, 0.95, 1}, t), Quadrant::kNavExit);
  EXPECT_EQ(AssignQuadrant({"a", 0.1, 0.2, 1}, t), Quadrant::kNavRelay);
  EXPECT_EQ(AssignQuadrant({"a", 0.66, 0.88, 1}, t), Quadrant::kNavRelay);
}

TEST(GroupSharesTest, PartitionSumsTo100) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<uint64_t> views(1, 100000);
  std::vector<TrafficMetrics> m;
  for (int i = 0; i < 5000; ++i) m.push_back({"a" + std::to_string(i), unit(rng), unit(rng), views(rng)});
  const auto labels = AssignQuadrants(m, ComputeThresholds(m));
  const auto g = ComputeGroupShares(m, labels);
  double a = 0, v = 0;
  for (Quadrant q : kQuadrants) {
    a += g.ArticlePercent(q);
    v += g.ViewPercent(q);
  }
  EXPECT_NEAR(a, 100.0, 1e-9);
  EXPECT_NEAR(v, 100.0, 1e-9);
  EXPECT_EQ(g.total_articles(), m.size());
}

TEST(HistogramTest, Examples) {
  const std::vector<double> values = {0.1, 0.9};
  EXPECT_EQ(Histogram(values, {}, 2), (std::vector<uint64_t>{1, 1}));
  const std::vector<uint64_t> w = {10, 30};
  EXPECT_EQ(Histogram(values, w, 2), (std::vector<uint64_t>{10, 30}));
  const std::vector<double> edges = {0.0, 1.0};
  EXPECT_EQ(Histogram(edges, {}, 4), (std::vector<uint64_t>{1, 0, 0, 1}));
  const std::vector<double> bad = {1.5};
  EXPECT_THROW(Histogram(bad, {}, 2), DomainError);
  EXPECT_THROW(Histogram(values, {}, 0), DomainError);
}

TEST(HistogramTest, WeightedSumEqualsTotalWeightAndMatchesSerial) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<uint64_t> weight(0, 1u << 20);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> v(3000);
    std::vector<uint64_t> w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = unit(rng);
      w[i] = weight(rng);
    }
    const auto h = Histogram(v, w, 1 + rep * 7, 3);
    EXPECT_EQ(std::accumulate(h.begin(), h.end(), uint64_t{0}),
              std::accumulate(w.begin(), w.end(), uint64_t{0}));
    EXPECT_EQ(h, serial::Histogram(v, w, 1 + rep * 7));
  }
}

TEST(HeatmapTest, CornerCell) {
  const std::vector<TrafficMetrics> m = {{"a", 1.0, 1.0, 5}};
  const Grid g = HeatmapGrid(m, 10, false);
  EXPECT_EQ(g.at(9, 9), 1.0);
  EXPECT_EQ(g.Sum(), 1.0);
}

TEST(HeatmapTest, MatchesNaiveRebinningAndConserves) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<uint64_t> views(1, 1000000);
  std::vector<TrafficMetrics> m;
  uint64_t total = 0;
  for (int i = 0; i < 1000; ++i) {
    m.push_back({"a", unit(rng), unit(rng), views(rng)});
    total += m.back().total_views;
  }
  m.push_back({"b", 1.0, 0.0, 3});
  total += 3;
  for (bool weighted : {false, true}) {
    const Grid g = HeatmapGrid(m, 50, weighted, 4);
    EXPECT_EQ(g.cells, oracle::NaiveHeatmap(m, 50, weighted).cells);
    EXPECT_EQ(g.cells, serial::HeatmapGrid(m, 50, weighted).cells);
    EXPECT_EQ(g.Sum(), weighted ? static_cast<double>(total) : static_cast<double>(m.size()));
  }
}

TEST(SummaryTest, CorrelationsAndMedians) {
  TrafficTable table = {{"a", 3, 1, 0, 4}, {"b", 1, 1, 1, 2}, {"c", 0, 5, 10, 5}};
  const auto m = ComputeMetrics(table);
  const auto s = Summarize(table, m);
  EXPECT_EQ(s.articles, 3u);
  EXPECT_EQ(s.total_views, 11u);
  EXPECT_EQ(s.search_views, 4u);
  EXPECT_DOUBLE_EQ(s.median_searchshare, 0.5);
  EXPECT_DOUBLE_EQ(s.median_resistance, 0.5);
  // numpy.corrcoef([0.75, 0.5, 0], [1, 0.5, 0])
  EXPECT_NEAR(s.pearson, 0.9819805060619656, 1e-12);
  EXPECT_NEAR(s.spearman, 1.0, 1e-12);
}

}  // namespace
}  // namespace clickroles
