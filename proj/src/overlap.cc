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

#include "clickroles/overlap.h"

#include <algorithm>
#include <numeric>
#include <string_view>
#include <unordered_set>

#include "clickroles/errors.h"
#include "clickroles/io.h"

namespace clickroles {

std::string_view TrafficKeyName(TrafficKey key) {
  switch (key) {
    case TrafficKey::kTotal:
      return "total";
    case TrafficKey::kInSe:
      return "in_se";
    case TrafficKey::kInNav:
      return "in_nav";
    case TrafficKey::kOutNav:
      return "out_nav";
  }
  return "total";
}

TrafficKey ParseTrafficKey(std::string_view name) {
  for (TrafficKey k : {TrafficKey::kTotal, TrafficKey::kInSe, TrafficKey::kInNav,
                       TrafficKey::kOutNav}) {
    if (TrafficKeyName(k) == name) return k;
  }
  throw UsageError("unknown ranking key '" + std::string(name) +
                   "' (expected total, in_se, in_nav or out_nav)");
}

uint64_t KeyValue(const ArticleTraffic& t, TrafficKey key) {
  switch (key) {
    case TrafficKey::kTotal:
      return t.total_views;
    case TrafficKey::kInSe:
      return t.in_se;
    case TrafficKey::kInNav:
      return t.in_nav;
    case TrafficKey::kOutNav:
      return t.out_nav;
  }
  return 0;
}

Ranking RankArticles(const TrafficTable& table, TrafficKey key) {
  std::vector<size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const uint64_t va = KeyValue(table[a], key);
    const uint64_t vb = KeyValue(table[b], key);
    if (va != vb) return va > vb;
    return table[a].article < table[b].article;
  });
  Ranking r;
  r.key = key;
  r.articles.reserve(order.size());
  for (size_t i : order) r.articles.push_back(table[i].article);
  return r;
}

std::vector<OverlapPoint> CumulativeOverlap(const Ranking& a, const Ranking& b,
                                            std::span<const size_t> ks) {
  const size_t limit = std::min(a.articles.size(), b.articles.size());
  for (size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] == 0) throw DomainError("overlap depth k must be positive");
    if (i > 0 && ks[i] <= ks[i - 1]) throw DomainError("overlap depths must be strictly increasing");
    if (ks[i] > limit) {
      throw DomainError("overlap depth " + std::to_string(ks[i]) + " exceeds ranking length " +
                        std::to_string(limit));
    }
  }
  std::vector<OverlapPoint> curve;
  curve.reserve(ks.size());
  std::unordered_set<std::string_view> seen_a, seen_b;
  size_t common = 0;
  size_t next = 0;
  for (size_t depth = 0; next < ks.size(); ++depth) {
    const std::string_view x = a.articles[depth];
    const std::string_view y = b.articles[depth];
    if (seen_b.contains(x)) ++common;
    seen_a.insert(x);
    if (seen_a.contains(y)) ++common;
    seen_b.insert(y);
    if (depth + 1 == ks[next]) {
      curve.push_back({ks[next], static_cast<double>(common) / static_cast<double>(ks[next])});
      ++next;
    }
  }
  return curve;
}

std::vector<size_t> LogKSchedule(size_t n) {
  std::vector<size_t> ks;
  for (size_t decade = 1; decade < n; decade *= 10) {
    for (size_t m : {1, 2, 5}) {
      const size_t k = m * decade;
      if (k < n) ks.push_back(k);
    }
  }
  if (n > 0) ks.push_back(n);
  return ks;
}

std::string FormatOverlapCurve(std::span<const OverlapPoint> curve, TrafficKey a, TrafficKey b) {
  std::string out = "# ranking_a: " + std::string(TrafficKeyName(a)) + "\n";
  out += "# ranking_b: " + std::string(TrafficKeyName(b)) + "\n";
  out += "k,overlap\n";
  for (const auto& p : curve) out += std::to_string(p.k) + "," + FormatDouble(p.overlap) + "\n";
  return out;
}

}  // namespace clickroles
