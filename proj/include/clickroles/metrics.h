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

#ifndef CLICKROLES_METRICS_H_
#define CLICKROLES_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickroles/ingest.h"

namespace clickroles {

// in_se / (in_se + in_nav). DomainError when the article has no inflow.
double Searchshare(const ArticleTraffic& t);

// 1 - out_nav / (in_se + in_nav), clamped to [0, 1]. Articles that forward
// more clicks than they receive (e.g. links opened in several tabs) get 0.
double Resistance(const ArticleTraffic& t);

struct TrafficMetrics {
  std::string article;
  double searchshare = 0.0;
  double resistance = 0.0;
  uint64_t total_views = 0;
};

enum class Quadrant { kSearchExit = 0, kSearchRelay = 1, kNavRelay = 2, kNavExit = 3 };
inline constexpr std::array<Quadrant, 4> kQuadrants = {
    Quadrant::kSearchExit, Quadrant::kSearchRelay, Quadrant::kNavRelay, Quadrant::kNavExit};

std::string_view QuadrantName(Quadrant q);
Quadrant ParseQuadrant(std::string_view name);

struct CorpusThresholds {
  double mean_searchshare = 0.0;
  double mean_resistance = 0.0;
};

// Metrics for every article with positive inflow; others are skipped and
// counted in `skipped` when given.
std::vector<TrafficMetrics> ComputeMetrics(const TrafficTable& table, int threads = 0,
                                           size_t* skipped = nullptr);

// Unweighted means over articles. DomainError on an empty table.
CorpusThresholds ComputeThresholds(std::span<const TrafficMetrics> metrics, int threads = 0);

// "Above mean" is strict: an article exactly at a mean counts as below.
Quadrant AssignQuadrant(const TrafficMetrics& m, const CorpusThresholds& t);

std::vector<Quadrant> AssignQuadrants(std::span<const TrafficMetrics> metrics,
                                      const CorpusThresholds& t, int threads = 0);

struct GroupShares {
  std::array<uint64_t, 4> articles{};
  std::array<uint64_t, 4> views{};

  double ArticlePercent(Quadrant q) const;
  double ViewPercent(Quadrant q) const;
  uint64_t total_articles() const;
  uint64_t total_views() const;
};

GroupShares ComputeGroupShares(std::span<const TrafficMetrics> metrics,
                               std::span<const Quadrant> labels);

// Corpus-level summary: means, medians, correlations (unweighted).
struct MetricSummary {
  size_t articles = 0;
  uint64_t total_views = 0;
  uint64_t search_views = 0;
  uint64_t nav_views = 0;
  CorpusThresholds thresholds;
  double median_searchshare = 0.0;
  double median_resistance = 0.0;
  double pearson = 0.0;
  double spearman = 0.0;
};

MetricSummary Summarize(const TrafficTable& table, std::span<const TrafficMetrics> metrics,
                        int threads = 0);

// Equal-width bins over [0, 1]; the last bin is right-closed.
size_t BinIndex(double value, size_t bins);

// Counts per bin, or sums of `weights` when weights is non-empty.
// DomainError for values outside [0, 1] or bins == 0.
std::vector<uint64_t> Histogram(std::span<const double> values, std::span<const uint64_t> weights,
                                size_t bins, int threads = 0);

// Row-major grid: rows are resistance bins, columns are searchshare bins.
struct Grid {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> cells;

  Grid() = default;
  Grid(size_t r, size_t c) : rows(r), cols(c), cells(r * c, 0.0) {}
  double& at(size_t r, size_t c) { return cells[r * cols + c]; }
  double at(size_t r, size_t c) const { return cells[r * cols + c]; }
  double Sum() const;
};

Grid HeatmapGrid(std::span<const TrafficMetrics> metrics, size_t grid_size, bool weighted,
                 int threads = 0);

namespace serial {
std::vector<uint64_t> Histogram(std::span<const double> values, std::span<const uint64_t> weights,
                                size_t bins);
Grid HeatmapGrid(std::span<const TrafficMetrics> metrics, size_t grid_size, bool weighted);
}  // namespace serial

// Output formats.
std::string FormatMetricsTable(std::span<const TrafficMetrics> metrics,
                               std::span<const Quadrant> labels);
struct MetricsRow {
  TrafficMetrics metrics;
  Quadrant quadrant = Quadrant::kNavRelay;
};
std::vector<MetricsRow> ReadMetricsTable(const std::string& path);

std::string FormatSummary(const MetricSummary& s);
CorpusThresholds ReadThresholds(const std::string& path);
std::string FormatGroupShares(const GroupShares& g);
// "# key: value" metadata lines followed by "bin,lo,hi,value" rows.
std::string FormatHistogram(std::span<const uint64_t> bins, std::string_view metric,
                            bool weighted);
// "#" metadata lines then one CSV row per grid row. Cells for which
// `mask` is set are left empty.
std::string FormatGrid(const Grid& grid, std::string_view description,
                       std::span<const uint8_t> mask = {});

}  // namespace clickroles

#endif  // CLICKROLES_METRICS_H_
