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

#include "clickroles/linkgraph.h"

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace clickroles {
namespace {

LinkGraph Build(const std::vector<std::pair<std::string, std::string>>& edges) {
  LinkGraphBuilder b;
  for (const auto& [s, t] : edges) b.AddEdge(s, t);
  return b.Build();
}

LinkGraph BuildIds(size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  LinkGraphBuilder b;
  // Register every node first so ids equal the oracle's indices.
  for (size_t v = 0; v < n; ++v) b.AddEdge("n" + std::to_string(v), "n" + std::to_string(v));
  for (auto [s, t] : edges) b.AddEdge("n" + std::to_string(s), "n" + std::to_string(t));
  return b.Build();
}

std::vector<std::pair<uint32_t, uint32_t>> RandomEdges(size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t u = 0; u < n; ++u) {
    for (uint32_t v = 0; v < n; ++v) {
      if (u != v && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

TEST(BuildGraphTest, DedupAndSelfLoops) {
  LinkGraphBuilder b;
  b.AddEdge("A", "B");
  b.AddEdge("A", "B");
  b.AddEdge("A", "A");
  const LinkGraph g = b.Build();
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(*g.Find("B"), 1u);
  EXPECT_FALSE(g.Find("C").has_value());
}

TEST(BuildGraphTest, Empty) {
  const LinkGraph g = LinkGraphBuilder().Build();
  EXPECT_EQ(g.num_nodes(), 0u);
  EXPECT_TRUE(KCoreDecomposition(g).empty());
}

TEST(DegreesTest, CycleAndStar) {
  const LinkGraph cycle = Build({{"A", "B"}, {"B", "C"}, {"C", "A"}});
  for (const auto& d : ComputeDegrees(cycle)) EXPECT_EQ(d, (NodeDegrees{1, 1}));
  const LinkGraph star = Build({{"c", "1"}, {"c", "2"}, {"c", "3"}, {"c", "4"}, {"c", "5"}});
  const auto d = ComputeDegrees(star);
  EXPECT_EQ(d[0], (NodeDegrees{0, 5}));
  for (size_t i = 1; i < 6; ++i) EXPECT_EQ(d[i], (NodeDegrees{1, 0}));
}

TEST(DegreesTest, MatchesDenseMatrixOracle) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const size_t n = 20 + rep * 4;
    const auto edges = RandomEdges(n, 0.1, rng);
    const LinkGraph g = BuildIds(n, edges);
    const auto dense = oracle::DenseDegrees(n, edges);
    const auto d = ComputeDegrees(g, 3);
    EXPECT_EQ(d, serial::ComputeDegrees(g));
    for (size_t v = 0; v < n; ++v) {
      EXPECT_EQ(d[v].in_degree, dense[v].first);
      EXPECT_EQ(d[v].out_degree, dense[v].second);
    }
  }
}

TEST(KCoreTest, TriangleAndStar) {
  EXPECT_EQ(KCoreDecomposition(Build({{"A", "B"}, {"B", "C"}, {"C", "A"}})),
            (std::vector<uint32_t>{2, 2, 2}));
  EXPECT_EQ(KCoreDecomposition(Build({{"c", "1"}, {"c", "2"}, {"3", "c"}})),
            (std::vector<uint32_t>{1, 1, 1, 1}));
  // Reciprocal links count once in the projection.
  EXPECT_EQ(KCoreDecomposition(Build({{"A", "B"}, {"B", "A"}})), (std::vector<uint32_t>{1, 1}));
}

TEST(KCoreTest, MatchesIterativeDeletion) {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 15; ++rep) {
    const size_t n = 30 + rep * 10;
    const auto edges = RandomEdges(n, 0.02 + 0.01 * rep, rng);
    EXPECT_EQ(KCoreDecomposition(BuildIds(n, edges)), oracle::CoreNumbers(n, edges));
  }
}

TEST(KCoreTest, PeelingInvariantAndEdgeRemovalMonotone) {
  std::mt19937_64 rng(13);
  const size_t n = 120;
  auto edges = RandomEdges(n, 0.05, rng);
  const LinkGraph g = BuildIds(n, edges);
  const auto core = KCoreDecomposition(g);
  const auto u = g.Project();
  const uint32_t max_core = *std::max_element(core.begin(), core.end());
  for (uint32_t k = 1; k <= max_core; ++k) {
    for (NodeId v = 0; v < n; ++v) {
      if (core[v] < k) continue;
      uint32_t d = 0;
      for (NodeId w : u.adj(v)) d += core[w] >= k ? 1 : 0;
      EXPECT_GE(d, k);
    }
  }
  edges.erase(edges.begin() + edges.size() / 2);
  const auto reduced = KCoreDecomposition(BuildIds(n, edges));
  for (size_t v = 0; v < n; ++v) EXPECT_LE(reduced[v], core[v]);
}

TEST(KCoreTest, IndependentOfNodeOrder) {
  std::mt19937_64 rng(17);
  const size_t n = 80;
  auto edges = RandomEdges(n, 0.06, rng);
  const auto core = KCoreDecomposition(BuildIds(n, edges));
  // Relabel nodes in reverse and compare through titles.
  LinkGraphBuilder b;
  for (size_t v = n; v-- > 0;) b.AddEdge("n" + std::to_string(v), "n" + std::to_string(v));
  for (auto [s, t] : edges) b.AddEdge("n" + std::to_string(s), "n" + std::to_string(t));
  const LinkGraph reversed = b.Build();
  const auto rcore = KCoreDecomposition(reversed);
  for (NodeId v = 0; v < n; ++v) {
    EXPECT_EQ(rcore[*reversed.Find("n" + std::to_string(v))], core[v]);
  }
}

TEST(NetworkFeaturesTest, DegreeSumAndCoreBound) {
  std::mt19937_64 rng(23);
  const LinkGraph g = BuildIds(60, RandomEdges(60, 0.08, rng));
  for (const auto& f : ComputeNetworkFeatures(g)) {
    EXPECT_EQ(f.degree, f.in_degree + f.out_degree);
    EXPECT_LE(f.kcore, f.degree);
  }
}

}  // namespace
}  // namespace clickroles
