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

#ifndef CLICKROLES_OVERLAP_H_
#define CLICKROLES_OVERLAP_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickroles/ingest.h"

namespace clickroles {

enum class TrafficKey { kTotal, kInSe, kInNav, kOutNav };

std::string_view TrafficKeyName(TrafficKey key);
// Accepts total, in_se, in_nav, out_nav; anything else is a UsageError.
TrafficKey ParseTrafficKey(std::string_view name);
uint64_t KeyValue(const ArticleTraffic& t, TrafficKey key);

// Articles ordered by (key value desc, title asc).
struct Ranking {
  TrafficKey key = TrafficKey::kTotal;
  std::vector<std::string> articles;
};

Ranking RankArticles(const TrafficTable& table, TrafficKey key);

struct OverlapPoint {
  size_t k = 0;
  double overlap = 0.0;
};

// |top_k(a) & top_k(b)| / k for each k in `ks` (strictly increasing, each
// at most the shorter ranking's length), in one pass over both lists.
std::vector<OverlapPoint> CumulativeOverlap(const Ranking& a, const Ranking& b,
                                            std::span<const size_t> ks);

// 1, 2, 5, 10, 20, 50, ... below n, then n itself.
std::vector<size_t> LogKSchedule(size_t n);

std::string FormatOverlapCurve(std::span<const OverlapPoint> curve, TrafficKey a, TrafficKey b);

}  // namespace clickroles

#endif  // CLICKROLES_OVERLAP_H_
