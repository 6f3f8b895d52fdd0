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

// Brute-force reference computations used only by tests. None of these
// share code paths with the library kernels they check.

#ifndef CLICKROLES_TESTS_ORACLES_H_
#define CLICKROLES_TESTS_ORACLES_H_

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clickroles/features.h"
#include "clickroles/metrics.h"
#include "clickroles/model.h"

namespace clickroles::oracle {

// |set(a[:k]) & set(b[:k])| / k by explicit set construction.
double OverlapAt(const std::vector<std::string>& a, const std::vector<std::string>& b, size_t k);

// Core numbers by repeated deletion: for each k, strip nodes of degree < k
// until none remain; a node's core is the largest k it survives.
std::vector<uint32_t> CoreNumbers(size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges);

// Degrees from a dense adjacency matrix (row = source).
std::vector<std::pair<uint32_t, uint32_t>> DenseDegrees(
    size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges);

// Quantile by full sort and linear interpolation.
double SortedQuantile(std::vector<double> v, double p);

// Equal-count bins by explicit sort of (feature, title) keys; per-bin
// quartiles by sorting each bin.
struct NaiveBin {
  size_t count;
  double q1, q2, q3;
};
std::vector<NaiveBin> BinnedQuartiles(const std::vector<JoinedRow>& rows, Feature feature,
                                      Target target, size_t n_bins);

// (2 * concordant + ties) / (2 * P * N) over all positive/negative pairs.
double PairCountingAuc(const std::vector<double>& scores, const std::vector<uint8_t>& labels);

// Nested-loop join with the same drop semantics as JoinFeatures.
std::vector<std::string> NestedLoopJoinKeys(const std::vector<MetricsRow>& metrics,
                                            const std::vector<NetworkFeatures>& network,
                                            const std::vector<ContentRow>& content,
                                            const std::vector<TopicAssignment>& topics);

// Cell test lo <= v < hi (last cell closed) in a double loop over cells.
Grid NaiveHeatmap(const std::vector<TrafficMetrics>& metrics, size_t grid, bool weighted);

struct Stump {
  int feature = -1;
  double threshold = 0.0;
  double left_value = 0.0;
  double right_value = 0.0;
};
// Enumerates every (feature, midpoint) stump with direct sums and keeps the
// one with the lowest second-order loss approximation.
Stump BestStump(const Dataset& data, size_t min_leaf);

// Planted LDA corpus: `topics` topics over disjoint vocabularies of
// `words_per_topic` tokens; each document draws `doc_length` tokens, a
// share `purity` from its planted topic and the rest uniformly from others.
struct PlantedCorpus {
  std::vector<std::pair<std::string, std::string>> docs;
  std::vector<int> planted_topic;
  std::vector<std::vector<std::string>> topic_words;
};
PlantedCorpus MakePlantedCorpus(int topics, int words_per_topic, int docs, int doc_length,
                                double purity, uint64_t seed);

// Best accuracy over all label permutations (topics <= 6).
double PermutationAccuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                           int topics);

}  // namespace clickroles::oracle

#endif  // CLICKROLES_TESTS_ORACLES_H_
