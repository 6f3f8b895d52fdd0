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

#ifndef CLICKROLES_INGEST_H_
#define CLICKROLES_INGEST_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace clickroles {

// One (referrer, resource, type, count) row of a clickstream dump.
struct TransitionRecord {
  std::string referrer;
  std::string resource;
  std::string rawtype;
  int64_t count = 0;

  bool operator==(const TransitionRecord&) const = default;
};

enum class ReferrerClass { kSearchEngine, kInternalArticle, kOtherExternal, kMissing, kOther };

std::string_view ReferrerClassName(ReferrerClass c);

// Reserved referrer tokens and type tokens of a dump release. The
// defaults describe the 2016-08 English release.
struct ReferrerMapping {
  std::set<std::string, std::less<>> search_tokens = {"other-search"};
  std::set<std::string, std::less<>> missing_tokens = {"other-empty"};
  std::set<std::string, std::less<>> external_tokens = {"other-external"};
  std::string internal_rawtype = "link";
  std::set<std::string, std::less<>> declared_rawtypes = {"link", "external", "other"};

  // Applies "key=value" overrides; values are comma-separated token lists.
  // Keys: search, missing, external, internal_type, types.
  void Apply(std::string_view key, std::string_view value);
};

ReferrerClass ClassifyReferrer(const TransitionRecord& record, const ReferrerMapping& mapping);

struct ParserConfig {
  bool strict = false;
  // A first line matching this regular expression is skipped as a header.
  std::string header_pattern = "^prev\tcurr\ttype\tn$";
  // Public dumps only publish pairs seen at least this often.
  int64_t min_count = 10;
  ReferrerMapping mapping;
};

struct ParseStats {
  uint64_t lines = 0;
  uint64_t records = 0;
  uint64_t malformed = 0;
  uint64_t unknown_rawtype = 0;
  uint64_t below_min_count = 0;
  bool header_skipped = false;

  bool operator==(const ParseStats&) const = default;
};

// Streams records to `sink` in input order. Strict mode throws DataError
// naming the first malformed line; lenient mode skips and tallies.
ParseStats ParseClickstream(std::istream& in, const ParserConfig& config,
                            const std::function<void(TransitionRecord&&)>& sink);
ParseStats ParseClickstreamFile(const std::string& path, const ParserConfig& config,
                                const std::function<void(TransitionRecord&&)>& sink);

// Convenience: materializes all records.
std::vector<TransitionRecord> ParseClickstream(std::istream& in, const ParserConfig& config,
                                               ParseStats* stats);

// Per-article aggregates. total_views == in_se + in_nav.
struct ArticleTraffic {
  std::string article;
  uint64_t in_se = 0;
  uint64_t in_nav = 0;
  uint64_t out_nav = 0;
  uint64_t total_views = 0;

  bool operator==(const ArticleTraffic&) const = default;
};

// Sorted by article title, one row per article.
using TrafficTable = std::vector<ArticleTraffic>;

struct AggregateOptions {
  // Retain articles that appear only as referrers (in-counts zero).
  bool keep_referrer_only = false;
  int threads = 0;
};

// Integer-sum accumulator. Merge is associative and commutative, so any
// sharding of the input gives the same table.
class TrafficAggregator {
 public:
  explicit TrafficAggregator(const ReferrerMapping& mapping) : mapping_(&mapping) {}

  void Add(const TransitionRecord& record);
  void Merge(const TrafficAggregator& other);
  TrafficTable Finish(const AggregateOptions& options) const;

  size_t size() const { return counts_.size(); }

 private:
  struct Counts {
    uint64_t in_se = 0;
    uint64_t in_nav = 0;
    uint64_t out_nav = 0;
  };
  const ReferrerMapping* mapping_;
  std::unordered_map<std::string, Counts> counts_;
};

// Shards records over threads and merges per-thread aggregators.
TrafficTable AggregateTraffic(std::span<const TransitionRecord> records,
                              const ReferrerMapping& mapping, const AggregateOptions& options);

namespace serial {
// Single-pass reference over an ordered map.
TrafficTable AggregateTraffic(std::span<const TransitionRecord> records,
                              const ReferrerMapping& mapping, const AggregateOptions& options);
}  // namespace serial

// Parses and aggregates one or more dump files in a single streaming pass.
TrafficTable IngestFiles(const std::vector<std::string>& paths, const ParserConfig& config,
                         const AggregateOptions& options, ParseStats* stats);

// article, in_se, in_nav, out_nav, total_views with a header line.
std::string FormatTrafficTable(const TrafficTable& table);
void WriteTrafficTable(const std::string& path, const TrafficTable& table);
// Validates total_views = in_se + in_nav and key uniqueness.
TrafficTable ReadTrafficTable(const std::string& path);

}  // namespace clickroles

#endif  // CLICKROLES_INGEST_H_
