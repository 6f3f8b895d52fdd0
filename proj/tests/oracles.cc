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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace clickroles::oracle {

double OverlapAt(const std::vector<std::string>& a, const std::vector<std::string>& b, size_t k) {
  std::set<std::string> sa(a.begin(), a.begin() + k);
  std::set<std::string> sb(b.begin(), b.begin() + k);
  std::vector<std::string> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

std::vector<uint32_t> CoreNumbers(size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  std::vector<std::set<uint32_t>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<uint32_t> core(n, 0);
  for (uint32_t k = 1;; ++k) {
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        uint32_t d = 0;
        for (uint32_t w : adj[v]) d += alive[w] ? 1 : 0;
        if (d < k) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    bool any = false;
    for (size_t v = 0; v < n; ++v) {
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    }
    if (!any) break;
  }
  return core;
}

std::vector<std::pair<uint32_t, uint32_t>> DenseDegrees(
    size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (auto [u, v] : edges) {
    if (u != v) m[u][v] = 1;
  }
  std::vector<std::pair<uint32_t, uint32_t>> out(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      out[i].second += m[i][j];  // out-degree: row sum
      out[j].first += m[i][j];   // in-degree: column sum
    }
  }
  return out;
}

double SortedQuantile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - lo) * (v[lo + 1] - v[lo]);
}

std::vector<NaiveBin> BinnedQuartiles(const std::vector<JoinedRow>& rows, Feature feature,
                                      Target target, size_t n_bins) {
  std::vector<std::tuple<double, std::string, double>> keyed;
  for (const auto& r : rows) {
    auto v = r.Get(feature);
    if (v) keyed.emplace_back(*v, r.article, r.Get(target));
  }
  std::sort(keyed.begin(), keyed.end());
  const size_t n = keyed.size();
  std::vector<NaiveBin> out;
  for (size_t b = 0; b < n_bins; ++b) {
    const size_t lo = b * n / n_bins;
    const size_t hi = (b + 1) * n / n_bins;
    std::vector<double> values;
    for (size_t i = lo; i < hi; ++i) values.push_back(std::get<2>(keyed[i]));
    out.push_back(NaiveBin{hi - lo, SortedQuantile(values, 0.25), SortedQuantile(values, 0.5),
                           SortedQuantile(values, 0.75)});
  }
  return out;
}

double PairCountingAuc(const std::vector<double>& scores, const std::vector<uint8_t>& labels) {
  int64_t twice = 0, pos = 0, neg = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i]) {
      ++pos;
    } else {
      ++neg;
    }
  }
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      if (scores[i] > scores[j]) twice += 2;
      if (scores[i] == scores[j]) twice += 1;
    }
  }
  return static_cast<double>(twice) / static_cast<double>(2 * pos * neg);
}

std::vector<std::string> NestedLoopJoinKeys(const std::vector<MetricsRow>& metrics,
                                            const std::vector<NetworkFeatures>& network,
                                            const std::vector<ContentRow>& content,
                                            const std::vector<TopicAssignment>& topics) {
  std::vector<std::string> keys;
  for (const auto& m : metrics) {
    bool n = false, c = false, t = false;
    for (const auto& r : network) n = n || r.article == m.metrics.article;
    for (const auto& r : content) c = c || r.article == m.metrics.article;
    for (const auto& r : topics) t = t || r.article == m.metrics.article;
    if (n && c && t) keys.push_back(m.metrics.article);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

Grid NaiveHeatmap(const std::vector<TrafficMetrics>& metrics, size_t grid, bool weighted) {
  Grid g(grid, grid);
  for (size_t r = 0; r < grid; ++r) {
    const double rlo = static_cast<double>(r) / grid;
    const double rhi = static_cast<double>(r + 1) / grid;
    for (size_t c = 0; c < grid; ++c) {
      const double clo = static_cast<double>(c) / grid;
      const double chi = static_cast<double>(c + 1) / grid;
      for (const auto& m : metrics) {
        const bool in_r = m.resistance >= rlo && (m.resistance < rhi || r + 1 == grid);
        const bool in_c = m.searchshare >= clo && (m.searchshare < chi || c + 1 == grid);
        if (in_r && in_c) g.at(r, c) += weighted ? static_cast<double>(m.total_views) : 1.0;
      }
    }
  }
  return g;
}

Stump BestStump(const Dataset& data, size_t min_leaf) {
  const size_t n = data.rows();
  double positives = 0;
  for (uint8_t y : data.y) positives += y;
  const double prior = positives / n;
  std::vector<double> g(n), h(n);
  for (size_t i = 0; i < n; ++i) {
    g[i] = prior - data.y[i];
    h[i] = prior * (1 - prior);
  }
  const double lambda = kHessianRegularizer;
  Stump best;
  double best_objective = 0.0;  // the unsplit root scores -G^2/(H+l); compare gains
  for (size_t f = 0; f < data.cols(); ++f) {
    std::set<double> values;
    for (size_t i = 0; i < n; ++i) values.insert(data.at(i, f));
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const double thr = (*it + *std::next(it)) / 2;
      double gl = 0, hl = 0, gr = 0, hr = 0;
      size_t nl = 0, nr = 0;
      for (size_t i = 0; i < n; ++i) {
        if (data.at(i, f) <= thr) {
          gl += g[i];
          hl += h[i];
          ++nl;
        } else {
          gr += g[i];
          hr += h[i];
          ++nr;
        }
      }
      if (nl < min_leaf || nr < min_leaf) continue;
      const double gt = gl + gr, ht = hl + hr;
      // Reduction in the second-order loss approximation.
      const double gain =
          gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - gt * gt / (ht + lambda);
      if (gain > best_objective + 1e-12) {
        best_objective = gain;
        best = Stump{static_cast<int>(f), thr, -gl / (hl + lambda), -gr / (hr + lambda)};
      }
    }
  }
  return best;
}

namespace {

std::string WordName(int topic, int j) {
  std::string w;
  w.push_back(static_cast<char>('a' + topic));
  w.push_back(static_cast<char>('a' + j / 26));
  w.push_back(static_cast<char>('a' + j % 26));
  return w;
}

}  // namespace

PlantedCorpus MakePlantedCorpus(int topics, int words_per_topic, int docs, int doc_length,
                                double purity, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> word(0, words_per_topic - 1);
  std::uniform_int_distribution<int> other(0, topics - 2);
  PlantedCorpus c;
  c.topic_words.resize(topics);
  for (int k = 0; k < topics; ++k) {
    for (int j = 0; j < words_per_topic; ++j) c.topic_words[k].push_back(WordName(k, j));
  }
  for (int d = 0; d < docs; ++d) {
    const int planted = d % topics;
    std::string text;
    for (int i = 0; i < doc_length; ++i) {
      int k = planted;
      if (unit(rng) >= purity) {
        k = other(rng);
        if (k >= planted) ++k;
      }
      text += c.topic_words[k][word(rng)];
      text += ' ';
    }
    c.docs.emplace_back("doc" + std::to_string(d), text);
    c.planted_topic.push_back(planted);
  }
  return c;
}

double PermutationAccuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                           int topics) {
  std::vector<int> perm(topics);
  std::iota(perm.begin(), perm.end(), 0);
  size_t best = 0;
  do {
    size_t hits = 0;
    for (size_t i = 0; i < truth.size(); ++i) hits += perm[predicted[i]] == truth[i] ? 1 : 0;
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / truth.size();
}

}  // namespace clickroles::oracle
