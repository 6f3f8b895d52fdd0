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

#include "clickroles/features.h"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "clickroles/errors.h"
#include "clickroles/io.h"
#include "clickroles/parallel.h"
#include "clickroles/rng.h"
#include "clickroles/stats.h"

namespace clickroles {

namespace {

constexpr std::array<Feature, 12> kAllFeatures = {
    Feature::kInDegree, Feature::kOutDegree, Feature::kDegree,    Feature::kKCore,
    Feature::kSections, Feature::kFigures,   Feature::kLists,     Feature::kTables,
    Feature::kRevisions, Feature::kEditors,  Feature::kAge,       Feature::kSize};

std::string OptionalField(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::string_view FeatureName(Feature f) {
  switch (f) {
    case Feature::kInDegree:
      return "in_degree";
    case Feature::kOutDegree:
      return "out_degree";
    case Feature::kDegree:
      return "degree";
    case Feature::kKCore:
      return "kcore";
    case Feature::kSections:
      return "sections";
    case Feature::kFigures:
      return "figures";
    case Feature::kLists:
      return "lists";
    case Feature::kTables:
      return "tables";
    case Feature::kRevisions:
      return "revisions";
    case Feature::kEditors:
      return "editors";
    case Feature::kAge:
      return "age";
    case Feature::kSize:
      return "size";
  }
  return "";
}

Feature ParseFeature(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (FeatureName(f) == name) return f;
  }
  throw UsageError("unknown feature '" + std::string(name) + "'");
}

std::string_view TargetName(Target t) {
  return t == Target::kSearchshare ? "searchshare" : "resistance";
}

Target ParseTarget(std::string_view name) {
  if (name == "searchshare") return Target::kSearchshare;
  if (name == "resistance") return Target::kResistance;
  throw UsageError("unknown target '" + std::string(name) + "' (expected searchshare or resistance)");
}

std::optional<double> JoinedRow::Get(Feature f) const {
  switch (f) {
    case Feature::kInDegree:
      return network ? std::optional<double>(network->in_degree) : std::nullopt;
    case Feature::kOutDegree:
      return network ? std::optional<double>(network->out_degree) : std::nullopt;
    case Feature::kDegree:
      return network ? std::optional<double>(network->degree) : std::nullopt;
    case Feature::kKCore:
      return network ? std::optional<double>(network->kcore) : std::nullopt;
    default:
      break;
  }
  if (!content) return std::nullopt;
  switch (f) {
    case Feature::kSections:
      return content->sections;
    case Feature::kFigures:
      return content->figures;
    case Feature::kLists:
      return content->lists;
    case Feature::kTables:
      return content->tables;
    case Feature::kRevisions:
      return content->revisions;
    case Feature::kEditors:
      return content->editors;
    case Feature::kAge:
      return content->age;
    case Feature::kSize:
      return content->size;
    default:
      return std::nullopt;
  }
}

namespace {

template <typename Row>
std::unordered_map<std::string_view, const Row*> IndexByArticle(std::span<const Row> rows,
                                                                 std::string_view what) {
  std::unordered_map<std::string_view, const Row*> index;
  index.reserve(rows.size());
  for (const auto& r : rows) {
    std::string_view key = [&]() -> std::string_view {
      if constexpr (requires { r.metrics; }) {
        return r.metrics.article;
      } else {
        return r.article;
      }
    }();
    if (!index.emplace(key, &r).second) {
      throw DataError("duplicate article '" + std::string(key) + "' in " + std::string(what));
    }
  }
  return index;
}

}  // namespace

JoinResult JoinFeatures(std::span<const MetricsRow> metrics, std::span<const NetworkFeatures> network,
                        std::span<const ContentRow> content, std::span<const TopicAssignment> topics,
                        const JoinOptions& options) {
  IndexByArticle(metrics, "metrics table");
  const auto net_index = IndexByArticle(network, "network table");
  const auto content_index = IndexByArticle(content, "content table");
  const auto topic_index = IndexByArticle(topics, "topic assignments");

  JoinResult result;
  std::unordered_set<std::string_view> used;
  for (const auto& m : metrics) {
    const std::string_view key = m.metrics.article;
    auto n = net_index.find(key);
    auto c = content_index.find(key);
    auto t = topic_index.find(key);
    const bool has_n = n != net_index.end();
    const bool has_c = c != content_index.end();
    const bool has_t = t != topic_index.end();
    if ((options.require_network && !has_n) || (options.require_content && !has_c) ||
        (options.require_topic && !has_t)) {
      continue;
    }
    JoinedRow row;
    row.article = m.metrics.article;
    row.searchshare = m.metrics.searchshare;
    row.resistance = m.metrics.resistance;
    row.total_views = m.metrics.total_views;
    row.quadrant = m.quadrant;
    if (has_n) row.network = *n->second;
    if (has_c) row.content = c->second->content;
    if (has_t) row.topic_id = t->second->topic_id;
    used.insert(key);
    result.rows.push_back(std::move(row));
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const JoinedRow& a, const JoinedRow& b) { return a.article < b.article; });
  auto count_unused = [&](const auto& rows) {
    size_t n = 0;
    for (const auto& r : rows) {
      if (!used.contains(r.article)) ++n;
    }
    return n;
  };
  result.dropped_metrics = metrics.size() - result.rows.size();
  result.dropped_network = count_unused(network);
  result.dropped_content = count_unused(content);
  result.dropped_topics = count_unused(topics);
  return result;
}

std::vector<ContentRow> ReadContentTable(const std::string& path) {
  HeaderTable t = ReadHeaderTable(path);
  const size_t ca = t.Column("article", path);
  const std::array<std::string_view, 8> names = {"sections", "figures", "lists",  "tables",
                                                 "revisions", "editors", "age",   "size"};
  std::array<size_t, 8> cols{};
  for (size_t i = 0; i < names.size(); ++i) cols[i] = t.Column(names[i], path);
  std::vector<ContentRow> rows;
  rows.reserve(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    std::array<double, 8> v{};
    for (size_t j = 0; j < names.size(); ++j) {
      auto parsed = ParseDouble(r[cols[j]]);
      if (!parsed || *parsed < 0) {
        throw DataError(path + ": row " + std::to_string(i + 2) + ": bad value for '" +
                        std::string(names[j]) + "'");
      }
      v[j] = *parsed;
    }
    rows.push_back(ContentRow{r[ca], ContentFeatures{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]}});
  }
  return rows;
}

std::vector<TopicAssignment> ReadTopicAssignments(const std::string& path) {
  LineReader reader(path);
  std::vector<TopicAssignment> rows;
  std::string line;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    if (reader.line_number() == 1 && line.rfind("article\t", 0) == 0) continue;
    auto f = SplitTabs(line);
    const std::string where = path + ":" + std::to_string(reader.line_number());
    if (f.size() != 3) throw DataError(where + ": expected article, topic_id, weight");
    auto id = ParseSigned(f[1]);
    auto w = ParseDouble(f[2]);
    if (!id || *id < 0 || !w) throw DataError(where + ": bad topic_id or weight");
    rows.push_back(TopicAssignment{std::string(f[0]), static_cast<int>(*id), *w});
  }
  return rows;
}

std::string FormatTopicAssignments(std::span<const TopicAssignment> rows) {
  std::string out = "article\ttopic_id\tweight\n";
  for (const auto& r : rows) {
    out += r.article + "\t" + std::to_string(r.topic_id) + "\t" + FormatDouble(r.weight) + "\n";
  }
  return out;
}

std::string FormatJoinedTable(std::span<const JoinedRow> rows) {
  std::string out = "article\tsearchshare\tresistance\ttotal_views\tquadrant";
  for (Feature f : kAllFeatures) out += "\t" + std::string(FeatureName(f));
  out += "\ttopic_id\n";
  for (const auto& r : rows) {
    out += r.article + "\t" + FormatDouble(r.searchshare) + "\t" + FormatDouble(r.resistance) +
           "\t" + std::to_string(r.total_views) + "\t" + std::string(QuadrantName(r.quadrant));
    for (Feature f : kAllFeatures) out += "\t" + OptionalField(r.Get(f));
    out += "\t" + (r.topic_id ? std::to_string(*r.topic_id) : std::string());
    out += "\n";
  }
  return out;
}

std::vector<JoinedRow> ReadJoinedTable(const std::string& path) {
  HeaderTable t = ReadHeaderTable(path);
  const size_t ca = t.Column("article", path);
  const size_t css = t.Column("searchshare", path);
  const size_t cres = t.Column("resistance", path);
  const size_t cv = t.Column("total_views", path);
  const size_t cq = t.Column("quadrant", path);
  const size_t ct = t.Column("topic_id", path);
  std::array<size_t, 12> fc{};
  for (size_t i = 0; i < kAllFeatures.size(); ++i) fc[i] = t.Column(FeatureName(kAllFeatures[i]), path);

  std::vector<JoinedRow> rows;
  rows.reserve(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::string where = path + ": row " + std::to_string(i + 2);
    JoinedRow row;
    row.article = r[ca];
    auto ss = ParseDouble(r[css]);
    auto res = ParseDouble(r[cres]);
    auto views = ParseUnsigned(r[cv]);
    if (!ss || !res || !views) throw DataError(where + ": bad metric field");
    row.searchshare = *ss;
    row.resistance = *res;
    row.total_views = *views;
    row.quadrant = ParseQuadrant(r[cq]);
    std::array<std::optional<double>, 12> v;
    for (size_t j = 0; j < fc.size(); ++j) {
      if (r[fc[j]].empty()) continue;
      v[j] = ParseDouble(r[fc[j]]);
      if (!v[j]) throw DataError(where + ": bad value for " + std::string(FeatureName(kAllFeatures[j])));
    }
    if (v[0] && v[1] && v[2] && v[3]) {
      row.network = NetworkFeatures{row.article, static_cast<uint32_t>(*v[0]),
                                    static_cast<uint32_t>(*v[1]), static_cast<uint32_t>(*v[2]),
                                    static_cast<uint32_t>(*v[3])};
    }
    if (v[4] && v[5] && v[6] && v[7] && v[8] && v[9] && v[10] && v[11]) {
      row.content = ContentFeatures{*v[4], *v[5], *v[6], *v[7], *v[8], *v[9], *v[10], *v[11]};
    }
    if (!r[ct].empty()) {
      auto id = ParseSigned(r[ct]);
      if (!id || *id < 0) throw DataError(where + ": bad topic_id");
      row.topic_id = static_cast<int>(*id);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GroupMedianTable GroupMedians(std::span<const JoinedRow> rows, std::span<const Feature> features) {
  GroupMedianTable table;
  table.features.assign(features.begin(), features.end());
  for (Feature f : features) {
    std::array<std::vector<double>, 5> groups;
    for (const auto& r : rows) {
      auto v = r.Get(f);
      if (!v) continue;
      groups[static_cast<int>(r.quadrant)].push_back(*v);
      groups[4].push_back(*v);
    }
    auto& out = table.values.emplace_back();
    for (size_t g = 0; g < groups.size(); ++g) out[g] = Median(std::move(groups[g]));
  }
  return table;
}

std::string FormatGroupMedians(const GroupMedianTable& table) {
  std::string out = "# statistic: median per article group\n";
  out += "feature,search-exit,search-relay,nav-relay,nav-exit,overall\n";
  for (size_t i = 0; i < table.features.size(); ++i) {
    out += FeatureName(table.features[i]);
    for (const auto& v : table.values[i]) out += "," + OptionalField(v);
    out += "\n";
  }
  return out;
}

namespace {

struct BinInput {
  std::vector<size_t> order;  // row indices sorted by (feature, title)
  std::vector<double> keys;   // feature value per sorted position
};

BinInput SortForBinning(std::span<const JoinedRow> rows, Feature feature, size_t n_bins) {
  BinInput in;
  std::vector<double> value(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    auto v = rows[i].Get(feature);
    if (!v) continue;
    value[i] = *v;
    in.order.push_back(i);
  }
  if (n_bins == 0) throw DomainError("bin count must be >= 1");
  if (in.order.size() < n_bins) {
    throw DomainError("cannot split " + std::to_string(in.order.size()) + " articles into " +
                      std::to_string(n_bins) + " bins");
  }
  std::stable_sort(in.order.begin(), in.order.end(), [&](size_t a, size_t b) {
    if (value[a] != value[b]) return value[a] < value[b];
    return rows[a].article < rows[b].article;
  });
  in.keys.reserve(in.order.size());
  for (size_t i : in.order) in.keys.push_back(value[i]);
  return in;
}

size_t BinStart(size_t bin, size_t n, size_t n_bins) { return bin * n / n_bins; }

}  // namespace

BinnedQuartiles ComputeBinnedQuartiles(std::span<const JoinedRow> rows, Feature feature,
                                       Target target, size_t n_bins, int threads) {
  const BinInput in = SortForBinning(rows, feature, n_bins);
  const size_t n = in.order.size();
  BinnedQuartiles out{feature, target, std::vector<QuartileBin>(n_bins)};
#pragma omp parallel for schedule(dynamic) num_threads(ResolveThreads(threads))
  for (long b = 0; b < static_cast<long>(n_bins); ++b) {
    const size_t lo = BinStart(b, n, n_bins);
    const size_t hi = BinStart(b + 1, n, n_bins);
    std::vector<double> values;
    values.reserve(hi - lo);
    for (size_t i = lo; i < hi; ++i) values.push_back(rows[in.order[i]].Get(target));
    auto& bin = out.bins[b];
    bin.index = b;
    bin.count = hi - lo;
    bin.feature_lo = in.keys[lo];
    bin.feature_hi = in.keys[hi - 1];
    bin.q1 = *Quantile(values, 0.25);
    bin.q2 = *Quantile(values, 0.5);
    bin.q3 = *Quantile(values, 0.75);
  }
  return out;
}

namespace serial {

BinnedQuartiles ComputeBinnedQuartiles(std::span<const JoinedRow> rows, Feature feature,
                                       Target target, size_t n_bins) {
  const BinInput in = SortForBinning(rows, feature, n_bins);
  const size_t n = in.order.size();
  BinnedQuartiles out{feature, target, {}};
  for (size_t b = 0; b < n_bins; ++b) {
    const size_t lo = BinStart(b, n, n_bins);
    const size_t hi = BinStart(b + 1, n, n_bins);
    std::vector<double> values;
    for (size_t i = lo; i < hi; ++i) values.push_back(rows[in.order[i]].Get(target));
    std::sort(values.begin(), values.end());
    out.bins.push_back(QuartileBin{b, hi - lo, in.keys[lo], in.keys[hi - 1],
                                   SortedQuantile(values, 0.25), SortedQuantile(values, 0.5),
                                   SortedQuantile(values, 0.75)});
  }
  return out;
}

}  // namespace serial

std::string FormatBinnedQuartiles(const BinnedQuartiles& b) {
  std::string out = "# feature: " + std::string(FeatureName(b.feature)) + "\n";
  out += "# target: " + std::string(TargetName(b.target)) + "\n";
  out += "# bins: " + std::to_string(b.bins.size()) +
         " equal-count, quantiles by linear interpolation\n";
  out += "bin,count,feature_lo,feature_hi,q1,q2,q3\n";
  for (const auto& bin : b.bins) {
    out += std::to_string(bin.index) + "," + std::to_string(bin.count) + "," +
           FormatDouble(bin.feature_lo) + "," + FormatDouble(bin.feature_hi) + "," +
           FormatDouble(bin.q1) + "," + FormatDouble(bin.q2) + "," + FormatDouble(bin.q3) + "\n";
  }
  return out;
}

std::vector<TopicStats> ComputeTopicStatistics(std::span<const JoinedRow> rows,
                                               const std::map<int, std::string>& labels) {
  struct Acc {
    size_t articles = 0;
    uint64_t views = 0;
    std::vector<double> age, editors, revisions, size;
  };
  std::map<int, Acc> by_topic;
  size_t total_articles = 0;
  uint64_t total_views = 0;
  for (const auto& r : rows) {
    if (!r.topic_id) continue;
    auto& a = by_topic[*r.topic_id];
    ++a.articles;
    a.views += r.total_views;
    ++total_articles;
    total_views += r.total_views;
    if (r.content) {
      a.age.push_back(r.content->age);
      a.editors.push_back(r.content->editors);
      a.revisions.push_back(r.content->revisions);
      a.size.push_back(r.content->size);
    }
  }
  std::vector<TopicStats> out;
  for (auto& [id, a] : by_topic) {
    TopicStats s;
    s.topic_id = id;
    auto label = labels.find(id);
    s.label = label != labels.end() ? label->second : "topic " + std::to_string(id);
    s.articles = a.articles;
    s.views = a.views;
    s.article_pct = 100.0 * a.articles / total_articles;
    s.view_pct = total_views == 0 ? 0.0 : 100.0 * a.views / total_views;
    s.median_age = Median(std::move(a.age));
    s.median_editors = Median(std::move(a.editors));
    s.median_revisions = Median(std::move(a.revisions));
    s.median_size = Median(std::move(a.size));
    out.push_back(std::move(s));
  }
  return out;
}

std::string FormatTopicStatistics(std::span<const TopicStats> stats) {
  std::string out =
      "topic_id,label,articles,views,article_pct,view_pct,median_age,median_editors,"
      "median_revisions,median_size\n";
  for (const auto& s : stats) {
    std::string label = s.label;
    std::replace(label.begin(), label.end(), ',', ';');
    out += std::to_string(s.topic_id) + "," + label + "," + std::to_string(s.articles) + "," +
           std::to_string(s.views) + "," + FormatDouble(s.article_pct) + "," +
           FormatDouble(s.view_pct) + "," + OptionalField(s.median_age) + "," +
           OptionalField(s.median_editors) + "," + OptionalField(s.median_revisions) + "," +
           OptionalField(s.median_size) + "\n";
  }
  return out;
}

std::map<int, std::string> ReadTopicLabels(const std::string& path) {
  LineReader reader(path);
  std::map<int, std::string> labels;
  std::string line;
  while (reader.Next(&line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = SplitTabs(line);
    auto id = f.size() == 2 ? ParseSigned(f[0]) : std::nullopt;
    if (!id) throw DataError(path + ":" + std::to_string(reader.line_number()) + ": expected id<TAB>label");
    labels[static_cast<int>(*id)] = std::string(f[1]);
  }
  return labels;
}

Grid TopicViewGrid(std::span<const JoinedRow> rows, std::optional<int> topic, size_t grid_size,
                   int threads) {
  std::vector<TrafficMetrics> metrics;
  for (const auto& r : rows) {
    if (topic && r.topic_id != topic) continue;
    metrics.push_back(TrafficMetrics{r.article, r.searchshare, r.resistance, r.total_views});
  }
  return HeatmapGrid(metrics, grid_size, /*weighted=*/true, threads);
}

RatioGrid RelativeDifference(const Grid& topic, const Grid& overall) {
  if (topic.rows != overall.rows || topic.cols != overall.cols) {
    throw UsageError("ratio grids differ in dimensions");
  }
  const double topic_sum = topic.Sum();
  const double overall_sum = overall.Sum();
  RatioGrid out{Grid(topic.rows, topic.cols), std::vector<uint8_t>(topic.cells.size(), 0)};
  for (size_t k = 0; k < topic.cells.size(); ++k) {
    if (overall.cells[k] == 0.0) {
      out.masked[k] = 1;
      continue;
    }
    const double t = topic_sum > 0.0 ? topic.cells[k] / topic_sum : 0.0;
    out.ratios.cells[k] = t / (overall.cells[k] / overall_sum);
  }
  return out;
}

std::vector<std::string> SampleArticles(std::vector<std::string> articles, size_t n, uint64_t seed) {
  std::sort(articles.begin(), articles.end());
  articles.erase(std::unique(articles.begin(), articles.end()), articles.end());
  if (n < articles.size()) {
    Rng rng(seed);
    for (size_t i = 0; i < n; ++i) {
      const size_t j = i + rng.Below(articles.size() - i);
      std::swap(articles[i], articles[j]);
    }
    articles.resize(n);
    std::sort(articles.begin(), articles.end());
  }
  return articles;
}

}  // namespace clickroles
