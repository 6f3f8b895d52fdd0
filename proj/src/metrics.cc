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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clickroles/errors.h"
#include "clickroles/io.h"
#include "clickroles/parallel.h"
#include "clickroles/stats.h"

namespace clickroles {

double Searchshare(const ArticleTraffic& t) {
  const uint64_t inflow = t.in_se + t.in_nav;
  if (inflow == 0) throw DomainError("searchshare undefined for '" + t.article + "': no inflow");
  return static_cast<double>(t.in_se) / static_cast<double>(inflow);
}

double Resistance(const ArticleTraffic& t) {
  const uint64_t inflow = t.in_se + t.in_nav;
  if (inflow == 0) throw DomainError("resistance undefined for '" + t.article + "': no inflow");
  if (t.out_nav >= inflow) return 0.0;
  return 1.0 - static_cast<double>(t.out_nav) / static_cast<double>(inflow);
}

std::string_view QuadrantName(Quadrant q) {
  switch (q) {
    case Quadrant::kSearchExit:
      return "search-exit";
    case Quadrant::kSearchRelay:
      return "search-relay";
    case Quadrant::kNavRelay:
      return "nav-relay";
    case Quadrant::kNavExit:
      return "nav-exit";
  }
  return "nav-relay";
}

Quadrant ParseQuadrant(std::string_view name) {
  for (Quadrant q : kQuadrants) {
    if (QuadrantName(q) == name) return q;
  }
  throw DataError("unknown quadrant label: " + std::string(name));
}

std::vector<TrafficMetrics> ComputeMetrics(const TrafficTable& table, int threads,
                                           size_t* skipped) {
  std::vector<TrafficMetrics> out(table.size());
  std::vector<char> keep(table.size(), 0);
#pragma omp parallel for schedule(static) num_threads(ResolveThreads(threads))
  for (long i = 0; i < static_cast<long>(table.size()); ++i) {
    const auto& t = table[i];
    if (t.in_se + t.in_nav == 0) continue;
    out[i] = TrafficMetrics{t.article, Searchshare(t), Resistance(t), t.in_se + t.in_nav};
    keep[i] = 1;
  }
  size_t w = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    if (!keep[i]) continue;
    if (w != i) out[w] = std::move(out[i]);
    ++w;
  }
  if (skipped != nullptr) *skipped = out.size() - w;
  out.resize(w);
  return out;
}

CorpusThresholds ComputeThresholds(std::span<const TrafficMetrics> metrics, int threads) {
  if (metrics.empty()) throw DomainError("thresholds of an empty metrics table");
  std::vector<double> ss(metrics.size()), res(metrics.size());
  for (size_t i = 0; i < metrics.size(); ++i) {
    ss[i] = metrics[i].searchshare;
    res[i] = metrics[i].resistance;
  }
  const double n = static_cast<double>(metrics.size());
  return CorpusThresholds{DeterministicSum(ss, threads) / n, DeterministicSum(res, threads) / n};
}

Quadrant AssignQuadrant(const TrafficMetrics& m, const CorpusThresholds& t) {
  const bool search = m.searchshare > t.mean_searchshare;
  const bool exit = m.resistance > t.mean_resistance;
  if (search) return exit ? Quadrant::kSearchExit : Quadrant::kSearchRelay;
  return exit ? Quadrant::kNavExit : Quadrant::kNavRelay;
}

std::vector<Quadrant> AssignQuadrants(std::span<const TrafficMetrics> metrics,
                                      const CorpusThresholds& t, int threads) {
  std::vector<Quadrant> out(metrics.size());
#pragma omp parallel for schedule(static) num_threads(ResolveThreads(threads))
  for (long i = 0; i < static_cast<long>(metrics.size()); ++i) {
    out[i] = AssignQuadrant(metrics[i], t);
  }
  return out;
}

double GroupShares::ArticlePercent(Quadrant q) const {
  const uint64_t total = total_articles();
  return total == 0 ? 0.0 : 100.0 * articles[static_cast<int>(q)] / total;
}

double GroupShares::ViewPercent(Quadrant q) const {
  const uint64_t total = total_views();
  return total == 0 ? 0.0 : 100.0 * views[static_cast<int>(q)] / total;
}

uint64_t GroupShares::total_articles() const {
  return articles[0] + articles[1] + articles[2] + articles[3];
}

uint64_t GroupShares::total_views() const { return views[0] + views[1] + views[2] + views[3]; }

GroupShares ComputeGroupShares(std::span<const TrafficMetrics> metrics,
                               std::span<const Quadrant> labels) {
  if (metrics.size() != labels.size()) throw UsageError("metrics and labels differ in length");
  GroupShares g;
  for (size_t i = 0; i < metrics.size(); ++i) {
    const int q = static_cast<int>(labels[i]);
    ++g.articles[q];
    g.views[q] += metrics[i].total_views;
  }
  return g;
}

MetricSummary Summarize(const TrafficTable& table, std::span<const TrafficMetrics> metrics,
                        int threads) {
  MetricSummary s;
  s.articles = metrics.size();
  for (const auto& t : table) {
    if (t.in_se + t.in_nav == 0) continue;
    s.search_views += t.in_se;
    s.nav_views += t.in_nav;
  }
  s.total_views = s.search_views + s.nav_views;
  s.thresholds = ComputeThresholds(metrics, threads);
  std::vector<double> ss(metrics.size()), res(metrics.size());
  for (size_t i = 0; i < metrics.size(); ++i) {
    ss[i] = metrics[i].searchshare;
    res[i] = metrics[i].resistance;
  }
  s.median_searchshare = *Median(ss);
  s.median_resistance = *Median(res);
  if (metrics.size() >= 2) {
    s.pearson = Pearson(ss, res);
    s.spearman = Spearman(ss, res);
  }
  return s;
}

size_t BinIndex(double value, size_t bins) {
  const size_t idx = static_cast<size_t>(value * static_cast<double>(bins));
  return std::min(idx, bins - 1);
}

namespace {

void CheckUnit(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("histogram value outside [0,1]: " + FormatDouble(v));
  }
}

}  // namespace

std::vector<uint64_t> Histogram(std::span<const double> values, std::span<const uint64_t> weights,
                                size_t bins, int threads) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  if (!weights.empty() && weights.size() != values.size()) {
    throw UsageError("histogram weights and values differ in length");
  }
  for (double v : values) CheckUnit(v);
  const int nt = ResolveThreads(threads);
  std::vector<std::vector<uint64_t>> local(nt, std::vector<uint64_t>(bins, 0));
#pragma omp parallel num_threads(nt)
  {
    auto& mine = local[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(values.size()); ++i) {
      mine[BinIndex(values[i], bins)] += weights.empty() ? 1 : weights[i];
    }
  }
  std::vector<uint64_t> out(bins, 0);
  for (const auto& l : local) {
    for (size_t b = 0; b < bins; ++b) out[b] += l[b];
  }
  return out;
}

double Grid::Sum() const {
  double s = 0.0;
  for (double c : cells) s += c;
  return s;
}

Grid HeatmapGrid(std::span<const TrafficMetrics> metrics, size_t grid_size, bool weighted,
                 int threads) {
  if (grid_size == 0) throw DomainError("heatmap grid size must be >= 1");
  const int nt = ResolveThreads(threads);
  const size_t cells = grid_size * grid_size;
  std::vector<std::vector<uint64_t>> local(nt, std::vector<uint64_t>(cells, 0));
#pragma omp parallel num_threads(nt)
  {
    auto& mine = local[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (long i = 0; i < static_cast<long>(metrics.size()); ++i) {
      const auto& m = metrics[i];
      const size_t r = BinIndex(m.resistance, grid_size);
      const size_t c = BinIndex(m.searchshare, grid_size);
      mine[r * grid_size + c] += weighted ? m.total_views : 1;
    }
  }
  Grid grid(grid_size, grid_size);
  for (size_t k = 0; k < cells; ++k) {
    uint64_t s = 0;
    for (const auto& l : local) s += l[k];
    grid.cells[k] = static_cast<double>(s);
  }
  return grid;
}

namespace serial {

std::vector<uint64_t> Histogram(std::span<const double> values, std::span<const uint64_t> weights,
                                size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  std::vector<uint64_t> out(bins, 0);
  for (size_t i = 0; i < values.size(); ++i) {
    CheckUnit(values[i]);
    out[BinIndex(values[i], bins)] += weights.empty() ? 1 : weights[i];
  }
  return out;
}

Grid HeatmapGrid(std::span<const TrafficMetrics> metrics, size_t grid_size, bool weighted) {
  if (grid_size == 0) throw DomainError("heatmap grid size must be >= 1");
  Grid grid(grid_size, grid_size);
  for (const auto& m : metrics) {
    grid.at(BinIndex(m.resistance, grid_size), BinIndex(m.searchshare, grid_size)) +=
        weighted ? static_cast<double>(m.total_views) : 1.0;
  }
  return grid;
}

}  // namespace serial

std::string FormatMetricsTable(std::span<const TrafficMetrics> metrics,
                               std::span<const Quadrant> labels) {
  std::string out = "article\tsearchshare\tresistance\ttotal_views\tquadrant\n";
  for (size_t i = 0; i < metrics.size(); ++i) {
    const auto& m = metrics[i];
    out += m.article;
    out += '\t';
    out += FormatDouble(m.searchshare);
    out += '\t';
    out += FormatDouble(m.resistance);
    out += '\t';
    out += std::to_string(m.total_views);
    out += '\t';
    out += QuadrantName(labels[i]);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> ReadMetricsTable(const std::string& path) {
  LineReader reader(path);
  std::vector<MetricsRow> rows;
  std::string line;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    if (reader.line_number() == 1 && line.rfind("article\t", 0) == 0) continue;
    auto f = SplitTabs(line);
    const std::string where = path + ":" + std::to_string(reader.line_number());
    if (f.size() != 5) throw DataError(where + ": expected 5 fields");
    auto ss = ParseDouble(f[1]);
    auto res = ParseDouble(f[2]);
    auto views = ParseUnsigned(f[3]);
    if (!ss || !res || !views) throw DataError(where + ": bad numeric field");
    rows.push_back(MetricsRow{TrafficMetrics{std::string(f[0]), *ss, *res, *views},
                              ParseQuadrant(f[4])});
  }
  return rows;
}

std::string FormatSummary(const MetricSummary& s) {
  std::ostringstream out;
  out << "articles=" << s.articles << "\n"
      << "total_views=" << s.total_views << "\n"
      << "search_views=" << s.search_views << "\n"
      << "nav_views=" << s.nav_views << "\n"
      << "mean_searchshare=" << FormatDouble(s.thresholds.mean_searchshare) << "\n"
      << "mean_resistance=" << FormatDouble(s.thresholds.mean_resistance) << "\n"
      << "median_searchshare=" << FormatDouble(s.median_searchshare) << "\n"
      << "median_resistance=" << FormatDouble(s.median_resistance) << "\n"
      << "pearson=" << FormatDouble(s.pearson) << "\n"
      << "spearman=" << FormatDouble(s.spearman) << "\n";
  return out.str();
}

CorpusThresholds ReadThresholds(const std::string& path) {
  LineReader reader(path);
  std::optional<double> ss, res;
  std::string line;
  while (reader.Next(&line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string_view key(line.data(), eq);
    const std::string_view value(line.data() + eq + 1, line.size() - eq - 1);
    if (key == "mean_searchshare") ss = ParseDouble(value);
    if (key == "mean_resistance") res = ParseDouble(value);
  }
  if (!ss || !res) throw DataError(path + ": missing mean_searchshare/mean_resistance");
  return CorpusThresholds{*ss, *res};
}

namespace {

std::string Percent1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

std::string FormatGroupShares(const GroupShares& g) {
  std::string out = "group,articles,views,article_pct,view_pct\n";
  for (Quadrant q : kQuadrants) {
    const int i = static_cast<int>(q);
    out += std::string(QuadrantName(q)) + "," + std::to_string(g.articles[i]) + "," +
           std::to_string(g.views[i]) + "," + Percent1(g.ArticlePercent(q)) + "," +
           Percent1(g.ViewPercent(q)) + "\n";
  }
  out += "total," + std::to_string(g.total_articles()) + "," + std::to_string(g.total_views()) +
         ",100.0,100.0\n";
  return out;
}

std::string FormatHistogram(std::span<const uint64_t> bins, std::string_view metric,
                            bool weighted) {
  std::string out;
  out += "# metric: " + std::string(metric) + "\n";
  out += "# weighted: " + std::string(weighted ? "views" : "articles") + "\n";
  out += "# bins: " + std::to_string(bins.size()) + " equal-width over [0,1], last bin closed\n";
  out += "bin,lo,hi,value\n";
  const double n = static_cast<double>(bins.size());
  for (size_t b = 0; b < bins.size(); ++b) {
    out += std::to_string(b) + "," + FormatDouble(b / n) + "," + FormatDouble((b + 1) / n) + "," +
           std::to_string(bins[b]) + "\n";
  }
  return out;
}

std::string FormatGrid(const Grid& grid, std::string_view description, std::span<const uint8_t> mask) {
  std::string out;
  out += "# " + std::string(description) + "\n";
  out += "# rows: resistance, " + std::to_string(grid.rows) + " bins over [0,1], row 0 = lowest\n";
  out += "# cols: searchshare, " + std::to_string(grid.cols) + " bins over [0,1], col 0 = lowest\n";
  for (size_t r = 0; r < grid.rows; ++r) {
    for (size_t c = 0; c < grid.cols; ++c) {
      if (c > 0) out += ',';
      const size_t k = r * grid.cols + c;
      if (!mask.empty() && mask[k]) continue;
      out += FormatDouble(grid.cells[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace clickroles
