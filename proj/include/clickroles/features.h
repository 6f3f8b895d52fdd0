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

#ifndef CLICKROLES_FEATURES_H_
#define CLICKROLES_FEATURES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickroles/linkgraph.h"
#include "clickroles/metrics.h"

namespace clickroles {

enum class Feature {
  kInDegree,
  kOutDegree,
  kDegree,
  kKCore,
  kSections,
  kFigures,
  kLists,
  kTables,
  kRevisions,
  kEditors,
  kAge,
  kSize,
};

inline constexpr std::array<Feature, 4> kNetworkFeatures = {
    Feature::kInDegree, Feature::kOutDegree, Feature::kDegree, Feature::kKCore};
inline constexpr std::array<Feature, 8> kContentFeatures = {
    Feature::kSections, Feature::kFigures, Feature::kLists,   Feature::kTables,
    Feature::kRevisions, Feature::kEditors, Feature::kAge,    Feature::kSize};

std::string_view FeatureName(Feature f);
Feature ParseFeature(std::string_view name);

enum class Target { kSearchshare, kResistance };
std::string_view TargetName(Target t);
Target ParseTarget(std::string_view name);

struct ContentFeatures {
  double sections = 0;
  double figures = 0;
  double lists = 0;
  double tables = 0;
  double revisions = 0;
  double editors = 0;
  double age = 0;   // years
  double size = 0;  // kilobytes
};

struct ContentRow {
  std::string article;
  ContentFeatures content;
};

struct TopicAssignment {
  std::string article;
  int topic_id = 0;
  double weight = 0.0;
};

// One article with its traffic metrics and whichever feature families
// were available at join time.
struct JoinedRow {
  std::string article;
  double searchshare = 0.0;
  double resistance = 0.0;
  uint64_t total_views = 0;
  Quadrant quadrant = Quadrant::kNavRelay;
  std::optional<NetworkFeatures> network;
  std::optional<ContentFeatures> content;
  std::optional<int> topic_id;

  std::optional<double> Get(Feature f) const;
  double Get(Target t) const { return t == Target::kSearchshare ? searchshare : resistance; }
};

struct JoinOptions {
  bool require_network = true;
  bool require_content = true;
  bool require_topic = true;
};

struct JoinResult {
  std::vector<JoinedRow> rows;  // sorted by article
  // Rows of each input that did not make it into the output.
  size_t dropped_metrics = 0;
  size_t dropped_network = 0;
  size_t dropped_content = 0;
  size_t dropped_topics = 0;
};

// Inner join on article title over the requested families. Duplicate keys
// in any input raise DataError naming the key.
JoinResult JoinFeatures(std::span<const MetricsRow> metrics, std::span<const NetworkFeatures> network,
                        std::span<const ContentRow> content, std::span<const TopicAssignment> topics,
                        const JoinOptions& options);

// Columns: article, sections, figures, lists, tables, revisions, editors,
// age, size (named header; extra columns ignored).
std::vector<ContentRow> ReadContentTable(const std::string& path);
// article, topic_id, weight (a header line is optional).
std::vector<TopicAssignment> ReadTopicAssignments(const std::string& path);
std::string FormatTopicAssignments(std::span<const TopicAssignment> rows);

std::string FormatJoinedTable(std::span<const JoinedRow> rows);
std::vector<JoinedRow> ReadJoinedTable(const std::string& path);

// Medians per quadrant plus an "overall" column over the union of groups.
struct GroupMedianTable {
  std::vector<Feature> features;
  // values[i][q] for quadrant index q in 0..3, [4] is overall. Absent when
  // the group has no article with that feature.
  std::vector<std::array<std::optional<double>, 5>> values;
};

GroupMedianTable GroupMedians(std::span<const JoinedRow> rows, std::span<const Feature> features);
std::string FormatGroupMedians(const GroupMedianTable& table);

struct QuartileBin {
  size_t index = 0;
  size_t count = 0;
  double feature_lo = 0.0;
  double feature_hi = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

struct BinnedQuartiles {
  Feature feature = Feature::kKCore;
  Target target = Target::kSearchshare;
  std::vector<QuartileBin> bins;
};

// Sorts articles by (feature asc, title asc), splits them into `n_bins`
// contiguous bins of equal count (sizes differ by at most one) and reports
// the target's quartiles per bin. Rows without the feature are ignored.
BinnedQuartiles ComputeBinnedQuartiles(std::span<const JoinedRow> rows, Feature feature,
                                       Target target, size_t n_bins = 25, int threads = 0);

namespace serial {
BinnedQuartiles ComputeBinnedQuartiles(std::span<const JoinedRow> rows, Feature feature,
                                       Target target, size_t n_bins = 25);
}  // namespace serial

std::string FormatBinnedQuartiles(const BinnedQuartiles& b);

struct TopicStats {
  int topic_id = 0;
  std::string label;
  size_t articles = 0;
  uint64_t views = 0;
  double article_pct = 0.0;
  double view_pct = 0.0;
  std::optional<double> median_age;
  std::optional<double> median_editors;
  std::optional<double> median_revisions;
  std::optional<double> median_size;
};

// Shares are over the topic-assigned rows only. Sorted by topic id.
std::vector<TopicStats> ComputeTopicStatistics(std::span<const JoinedRow> rows,
                                               const std::map<int, std::string>& labels = {});
std::string FormatTopicStatistics(std::span<const TopicStats> stats);

// "id<TAB>label" lines.
std::map<int, std::string> ReadTopicLabels(const std::string& path);

// View-weighted (searchshare, resistance) grid of the rows of one topic,
// or of all rows when topic is nullopt.
Grid TopicViewGrid(std::span<const JoinedRow> rows, std::optional<int> topic, size_t grid_size,
                   int threads = 0);

struct RatioGrid {
  Grid ratios;
  std::vector<uint8_t> masked;  // overall cell empty: no ratio defined
};

// Normalizes both grids to sum 1 and divides cell by cell. UsageError on
// mismatched dimensions.
RatioGrid RelativeDifference(const Grid& topic, const Grid& overall);

// Seeded uniform sample of n distinct articles, returned sorted.
std::vector<std::string> SampleArticles(std::vector<std::string> articles, size_t n, uint64_t seed);

}  // namespace clickroles

#endif  // CLICKROLES_FEATURES_H_
