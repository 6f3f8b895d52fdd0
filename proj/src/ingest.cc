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

#include "clickroles/ingest.h"

#include <omp.h>

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>

#include "clickroles/errors.h"
#include "clickroles/io.h"
#include "clickroles/parallel.h"

namespace clickroles {

std::string_view ReferrerClassName(ReferrerClass c) {
  switch (c) {
    case ReferrerClass::kSearchEngine:
      return "search";
    case ReferrerClass::kInternalArticle:
      return "internal";
    case ReferrerClass::kOtherExternal:
      return "external";
    case ReferrerClass::kMissing:
      return "missing";
    case ReferrerClass::kOther:
      return "other";
  }
  return "other";
}

namespace {

std::set<std::string, std::less<>> SplitTokenList(std::string_view value) {
  std::set<std::string, std::less<>> out;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    auto token = value.substr(start, comma - start);
    if (!token.empty()) out.emplace(token);
    start = comma + 1;
  }
  return out;
}

}  // namespace

void ReferrerMapping::Apply(std::string_view key, std::string_view value) {
  if (key == "search") {
    search_tokens = SplitTokenList(value);
  } else if (key == "missing") {
    missing_tokens = SplitTokenList(value);
  } else if (key == "external") {
    external_tokens = SplitTokenList(value);
  } else if (key == "internal_type") {
    internal_rawtype = std::string(value);
  } else if (key == "types") {
    declared_rawtypes = SplitTokenList(value);
  } else {
    throw UsageError("unknown referrer mapping key: " + std::string(key));
  }
}

ReferrerClass ClassifyReferrer(const TransitionRecord& record, const ReferrerMapping& mapping) {
  if (mapping.search_tokens.contains(record.referrer)) return ReferrerClass::kSearchEngine;
  if (record.rawtype == mapping.internal_rawtype) return ReferrerClass::kInternalArticle;
  if (mapping.missing_tokens.contains(record.referrer)) return ReferrerClass::kMissing;
  if (mapping.external_tokens.contains(record.referrer)) return ReferrerClass::kOtherExternal;
  return ReferrerClass::kOther;
}

namespace {

class LineParser {
 public:
  LineParser(const ParserConfig& config, std::string source)
      : config_(config), source_(std::move(source)) {
    if (!config.header_pattern.empty()) header_.emplace(config.header_pattern);
  }

  void Feed(const std::string& line, const std::function<void(TransitionRecord&&)>& sink) {
    ++stats_.lines;
    if (stats_.lines == 1 && header_ && std::regex_search(line, *header_)) {
      stats_.header_skipped = true;
      return;
    }
    auto fields = SplitTabs(line);
    const char* problem = nullptr;
    std::optional<int64_t> count;
    if (fields.size() != 4) {
      problem = "expected 4 tab-separated fields";
    } else if (fields[0].empty()) {
      problem = "empty referrer";
    } else if (fields[1].empty()) {
      problem = "empty resource";
    } else if (!(count = ParseSigned(fields[3])) || *count < 0) {
      problem = "count is not a non-negative integer";
    }
    if (problem != nullptr) {
      if (config_.strict) {
        throw DataError(source_ + ":" + std::to_string(stats_.lines) + ": malformed line (" +
                        problem + ")");
      }
      ++stats_.malformed;
      return;
    }
    if (!config_.mapping.declared_rawtypes.contains(fields[2])) {
      if (config_.strict) {
        throw DataError(source_ + ":" + std::to_string(stats_.lines) + ": unknown type token '" +
                        std::string(fields[2]) + "'");
      }
      ++stats_.unknown_rawtype;
      return;
    }
    if (*count < config_.min_count) ++stats_.below_min_count;
    ++stats_.records;
    sink(TransitionRecord{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                          *count});
  }

  const ParseStats& stats() const { return stats_; }

 private:
  const ParserConfig& config_;
  std::string source_;
  std::optional<std::regex> header_;
  ParseStats stats_;
};

}  // namespace

ParseStats ParseClickstream(std::istream& in, const ParserConfig& config,
                            const std::function<void(TransitionRecord&&)>& sink) {
  LineParser parser(config, "<stream>");
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && line.back() == '\r') line.pop_back();
    parser.Feed(line, sink);
  }
  return parser.stats();
}

ParseStats ParseClickstreamFile(const std::string& path, const ParserConfig& config,
                                const std::function<void(TransitionRecord&&)>& sink) {
  LineReader reader(path);
  LineParser parser(config, path);
  std::string line;
  while (reader.Next(&line)) parser.Feed(line, sink);
  return parser.stats();
}

std::vector<TransitionRecord> ParseClickstream(std::istream& in, const ParserConfig& config,
                                               ParseStats* stats) {
  std::vector<TransitionRecord> records;
  ParseStats s = ParseClickstream(in, config, [&](TransitionRecord&& r) {
    records.push_back(std::move(r));
  });
  if (stats != nullptr) *stats = s;
  return records;
}

void TrafficAggregator::Add(const TransitionRecord& record) {
  const uint64_t n = static_cast<uint64_t>(record.count);
  switch (ClassifyReferrer(record, *mapping_)) {
    case ReferrerClass::kSearchEngine:
      counts_[record.resource].in_se += n;
      break;
    case ReferrerClass::kInternalArticle:
      counts_[record.resource].in_nav += n;
      counts_[record.referrer].out_nav += n;
      break;
    default:
      break;
  }
}

void TrafficAggregator::Merge(const TrafficAggregator& other) {
  for (const auto& [article, c] : other.counts_) {
    auto& mine = counts_[article];
    mine.in_se += c.in_se;
    mine.in_nav += c.in_nav;
    mine.out_nav += c.out_nav;
  }
}

TrafficTable TrafficAggregator::Finish(const AggregateOptions& options) const {
  TrafficTable table;
  table.reserve(counts_.size());
  for (const auto& [article, c] : counts_) {
    const uint64_t inflow = c.in_se + c.in_nav;
    if (inflow == 0 && !options.keep_referrer_only) continue;
    table.push_back(ArticleTraffic{article, c.in_se, c.in_nav, c.out_nav, inflow});
  }
  std::sort(table.begin(), table.end(),
            [](const ArticleTraffic& a, const ArticleTraffic& b) { return a.article < b.article; });
  return table;
}

namespace {

void AddParallel(TrafficAggregator* into, std::span<const TransitionRecord> records,
                 const ReferrerMapping& mapping, int threads) {
  const int nt = ResolveThreads(threads);
  if (nt == 1 || records.size() < 4096) {
    for (const auto& r : records) into->Add(r);
    return;
  }
  std::vector<TrafficAggregator> shards(nt, TrafficAggregator(mapping));
#pragma omp parallel num_threads(nt)
  {
    const int t = omp_get_thread_num();
    const size_t n = records.size();
    const size_t lo = n * t / nt;
    const size_t hi = n * (t + 1) / nt;
    for (size_t i = lo; i < hi; ++i) shards[t].Add(records[i]);
  }
  for (const auto& s : shards) into->Merge(s);
}

}  // namespace

TrafficTable AggregateTraffic(std::span<const TransitionRecord> records,
                              const ReferrerMapping& mapping, const AggregateOptions& options) {
  TrafficAggregator agg(mapping);
  AddParallel(&agg, records, mapping, options.threads);
  return agg.Finish(options);
}

namespace serial {

TrafficTable AggregateTraffic(std::span<const TransitionRecord> records,
                              const ReferrerMapping& mapping, const AggregateOptions& options) {
  std::map<std::string, ArticleTraffic> by_article;
  for (const auto& r : records) {
    const auto cls = ClassifyReferrer(r, mapping);
    const uint64_t n = static_cast<uint64_t>(r.count);
    if (cls == ReferrerClass::kSearchEngine) {
      by_article[r.resource].in_se += n;
    } else if (cls == ReferrerClass::kInternalArticle) {
      by_article[r.resource].in_nav += n;
      by_article[r.referrer].out_nav += n;
    }
  }
  TrafficTable table;
  for (auto& [article, t] : by_article) {
    t.article = article;
    t.total_views = t.in_se + t.in_nav;
    if (t.total_views == 0 && !options.keep_referrer_only) continue;
    table.push_back(t);
  }
  return table;
}

}  // namespace serial

TrafficTable IngestFiles(const std::vector<std::string>& paths, const ParserConfig& config,
                         const AggregateOptions& options, ParseStats* stats) {
  constexpr size_t kBatch = 1 << 20;
  TrafficAggregator agg(config.mapping);
  ParseStats total;
  std::vector<TransitionRecord> batch;
  batch.reserve(kBatch);
  for (const auto& path : paths) {
    ParseStats s = ParseClickstreamFile(path, config, [&](TransitionRecord&& r) {
      batch.push_back(std::move(r));
      if (batch.size() == kBatch) {
        AddParallel(&agg, batch, config.mapping, options.threads);
        batch.clear();
      }
    });
    total.lines += s.lines;
    total.records += s.records;
    total.malformed += s.malformed;
    total.unknown_rawtype += s.unknown_rawtype;
    total.below_min_count += s.below_min_count;
    total.header_skipped = total.header_skipped || s.header_skipped;
  }
  AddParallel(&agg, batch, config.mapping, options.threads);
  if (stats != nullptr) *stats = total;
  return agg.Finish(options);
}

std::string FormatTrafficTable(const TrafficTable& table) {
  std::string out = "article\tin_se\tin_nav\tout_nav\ttotal_views\n";
  for (const auto& t : table) {
    out += t.article;
    out += '\t';
    out += std::to_string(t.in_se);
    out += '\t';
    out += std::to_string(t.in_nav);
    out += '\t';
    out += std::to_string(t.out_nav);
    out += '\t';
    out += std::to_string(t.total_views);
    out += '\n';
  }
  return out;
}

void WriteTrafficTable(const std::string& path, const TrafficTable& table) {
  WriteFile(path, FormatTrafficTable(table));
}

TrafficTable ReadTrafficTable(const std::string& path) {
  LineReader reader(path);
  TrafficTable table;
  std::string line;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    if (reader.line_number() == 1 && line.rfind("article\t", 0) == 0) continue;
    auto f = SplitTabs(line);
    const std::string where = path + ":" + std::to_string(reader.line_number());
    if (f.size() != 5) throw DataError(where + ": expected 5 fields");
    auto in_se = ParseUnsigned(f[1]);
    auto in_nav = ParseUnsigned(f[2]);
    auto out_nav = ParseUnsigned(f[3]);
    auto total = ParseUnsigned(f[4]);
    if (!in_se || !in_nav || !out_nav || !total) throw DataError(where + ": bad count");
    if (*total != *in_se + *in_nav) throw DataError(where + ": total_views != in_se + in_nav");
    table.push_back(ArticleTraffic{std::string(f[0]), *in_se, *in_nav, *out_nav, *total});
  }
  std::sort(table.begin(), table.end(),
            [](const ArticleTraffic& a, const ArticleTraffic& b) { return a.article < b.article; });
  for (size_t i = 1; i < table.size(); ++i) {
    if (table[i].article == table[i - 1].article) {
      throw DataError(path + ": duplicate article '" + table[i].article + "'");
    }
  }
  return table;
}

}  // namespace clickroles
