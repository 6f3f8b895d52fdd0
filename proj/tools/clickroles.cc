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

// clickroles: command-line driver for the traffic-role pipeline. Every
// subcommand writes its outputs plus a manifest.json into --out.

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clickroles/errors.h"
#include "clickroles/features.h"
#include "clickroles/ingest.h"
#include "clickroles/io.h"
#include "clickroles/linkgraph.h"
#include "clickroles/metrics.h"
#include "clickroles/model.h"
#include "clickroles/overlap.h"
#include "clickroles/parallel.h"
#include "clickroles/rng.h"
#include "clickroles/topics.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace clickroles {
namespace {

constexpr const char* kVersion = "1.0.0";

struct Globals {
  int threads = 0;
  uint64_t seed = 1;
  bool strict = false;
  std::string out;
};

std::string Timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects inputs, outputs and settings of one run and writes the manifest.
class Run {
 public:
  Run(const CLI::App& sub, const Globals& g) : sub_(sub), g_(g) {
    if (g.out.empty()) throw UsageError("--out is required");
    const fs::path manifest = fs::path(g.out) / "manifest.json";
    if (fs::exists(manifest)) {
      const json old = json::parse(ReadFile(manifest.string()), nullptr, false);
      if (!old.is_object() || old.value("subcommand", "") != sub.get_name()) {
        throw UsageError(g.out + " already holds the output of another subcommand");
      }
    }
  }

  const std::string& Input(const std::string& path) {
    if (!fs::is_regular_file(path)) throw DataError(path + ": no such file");
    inputs_[path] = Sha256File(path);
    return path;
  }

  void Emit(const std::string& name, std::string_view contents) {
    WriteFile((fs::path(g_.out) / name).string(), contents);
    outputs_.insert(name);
  }

  void Stat(const std::string& key, json value) { stats_[key] = std::move(value); }

  void Finish() const {
    json m;
    m["tool"] = "clickroles";
    m["version"] = kVersion;
    m["subcommand"] = sub_.get_name();
    m["seed"] = g_.seed;
    m["threads"] = g_.threads;
    m["strict"] = g_.strict;
    json config = json::object();
    for (const CLI::Option* opt : sub_.get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h") continue;
      const auto& results = opt->results();
      if (results.empty()) {
        if (!opt->get_default_str().empty()) config[opt->get_lnames().front()] = opt->get_default_str();
        continue;
      }
      config[opt->get_lnames().front()] = results.size() == 1 ? json(results[0]) : json(results);
    }
    m["config"] = config;
    json inputs = json::array();
    for (const auto& [path, digest] : inputs_) inputs.push_back({{"path", path}, {"sha256", digest}});
    m["inputs"] = inputs;
    m["outputs"] = outputs_;
    if (!stats_.empty()) m["stats"] = stats_;
    m["created"] = Timestamp();  // the only field that varies between identical runs
    WriteFile((fs::path(g_.out) / "manifest.json").string(), m.dump(2) + "\n");
  }

 private:
  const CLI::App& sub_;
  const Globals& g_;
  std::map<std::string, std::string> inputs_;
  std::set<std::string> outputs_;
  json stats_ = json::object();
};

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::vector<std::string> inputs;
  int64_t min_count = 10;
  bool keep_referrer_only = false;
  std::vector<std::string> mapping;
  std::string header = "^prev\tcurr\ttype\tn$";
};

void Ingest(const CLI::App& sub, const Globals& g, const IngestArgs& a) {
  Run run(sub, g);
  ParserConfig cfg;
  cfg.strict = g.strict;
  cfg.min_count = a.min_count;
  cfg.header_pattern = a.header;
  for (const auto& kv : a.mapping) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--map expects key=value, got '" + kv + "'");
    cfg.mapping.Apply(std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
  }
  for (const auto& p : a.inputs) run.Input(p);
  ParseStats stats;
  const TrafficTable table =
      IngestFiles(a.inputs, cfg, AggregateOptions{a.keep_referrer_only, g.threads}, &stats);
  run.Emit("traffic.tsv", FormatTrafficTable(table));
  run.Stat("lines", stats.lines);
  run.Stat("records", stats.records);
  run.Stat("malformed", stats.malformed);
  run.Stat("unknown_rawtype", stats.unknown_rawtype);
  run.Stat("below_min_count", stats.below_min_count);
  run.Stat("articles", table.size());
  std::fprintf(stderr, "ingest: %llu records, %llu malformed, %zu articles\n",
               static_cast<unsigned long long>(stats.records),
               static_cast<unsigned long long>(stats.malformed), table.size());
  run.Finish();
}

struct MetricsArgs {
  std::string traffic;
  size_t bins = 20;
  size_t grid = 50;
};

void Metrics(const CLI::App& sub, const Globals& g, const MetricsArgs& a) {
  Run run(sub, g);
  const TrafficTable table = ReadTrafficTable(run.Input(a.traffic));
  size_t skipped = 0;
  const auto metrics = ComputeMetrics(table, g.threads, &skipped);
  const MetricSummary summary = Summarize(table, metrics, g.threads);
  const auto labels = AssignQuadrants(metrics, summary.thresholds, g.threads);
  run.Emit("metrics.tsv", FormatMetricsTable(metrics, labels));
  run.Emit("summary.txt", FormatSummary(summary));
  run.Emit("group_shares.csv", FormatGroupShares(ComputeGroupShares(metrics, labels)));

  std::vector<double> ss, res;
  std::vector<uint64_t> views;
  for (const auto& m : metrics) {
    ss.push_back(m.searchshare);
    res.push_back(m.resistance);
    views.push_back(m.total_views);
  }
  for (const auto& [name, values] : {std::pair{"searchshare", &ss}, std::pair{"resistance", &res}}) {
    run.Emit(std::string("hist_") + name + ".csv",
             FormatHistogram(Histogram(*values, {}, a.bins, g.threads), name, false));
    run.Emit(std::string("hist_") + name + "_weighted.csv",
             FormatHistogram(Histogram(*values, views, a.bins, g.threads), name, true));
  }
  run.Emit("heatmap_articles.csv",
           FormatGrid(HeatmapGrid(metrics, a.grid, false, g.threads), "article count"));
  run.Emit("heatmap_views.csv",
           FormatGrid(HeatmapGrid(metrics, a.grid, true, g.threads), "view sum"));
  run.Stat("articles", metrics.size());
  run.Stat("skipped", skipped);
  run.Finish();
}

struct OverlapArgs {
  std::string traffic;
  std::vector<std::string> pairs = {"total:in_se", "total:in_nav", "total:out_nav"};
  std::string schedule = "log";
};

void Overlap(const CLI::App& sub, const Globals& g, const OverlapArgs& a) {
  Run run(sub, g);
  const TrafficTable table = ReadTrafficTable(run.Input(a.traffic));
  std::vector<size_t> ks;
  if (a.schedule == "log") {
    ks = LogKSchedule(table.size());
  } else {
    ks.resize(table.size());
    for (size_t i = 0; i < ks.size(); ++i) ks[i] = i + 1;
  }
  for (const auto& pair : a.pairs) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos) throw UsageError("--pair expects a:b, got '" + pair + "'");
    const TrafficKey ka = ParseTrafficKey(pair.substr(0, colon));
    const TrafficKey kb = ParseTrafficKey(pair.substr(colon + 1));
    const auto curve = CumulativeOverlap(RankArticles(table, ka), RankArticles(table, kb), ks);
    run.Emit("overlap_" + std::string(TrafficKeyName(ka)) + "_" + std::string(TrafficKeyName(kb)) +
                 ".csv",
             FormatOverlapCurve(curve, ka, kb));
  }
  run.Finish();
}

struct GraphArgs {
  std::string edges;
  std::string clickstream;
};

void Graph(const CLI::App& sub, const Globals& g, const GraphArgs& a) {
  if (a.edges.empty() == a.clickstream.empty()) {
    throw UsageError("give exactly one of --edges or --clickstream");
  }
  Run run(sub, g);
  EdgeLoadStats stats;
  const bool approx = !a.clickstream.empty();
  const LinkGraph graph = approx ? LoadClickstreamLinks(run.Input(a.clickstream), g.strict, &stats)
                                 : LoadEdgeList(run.Input(a.edges), g.strict, &stats);
  run.Emit("network.tsv", FormatNetworkTable(ComputeNetworkFeatures(graph, g.threads)));
  run.Stat("source", approx ? "clickstream link transitions (approximation, underestimates "
                              "the link graph)"
                            : "edge list");
  run.Stat("approximation", approx);
  run.Stat("nodes", graph.num_nodes());
  run.Stat("edges", graph.num_edges());
  run.Stat("malformed", stats.malformed);
  run.Stat("self_loops", stats.self_loops);
  run.Stat("duplicates", stats.duplicates);
  run.Finish();
}

struct FeaturesArgs {
  std::string metrics;
  std::string network;
  std::string content;
  std::string topics;
  std::string labels;
  size_t grid = 50;
};

void Features(const CLI::App& sub, const Globals& g, const FeaturesArgs& a) {
  Run run(sub, g);
  const auto metrics = ReadMetricsTable(run.Input(a.metrics));
  std::vector<NetworkFeatures> network;
  std::vector<ContentRow> content;
  std::vector<TopicAssignment> topics;
  if (!a.network.empty()) network = ReadNetworkTable(run.Input(a.network));
  if (!a.content.empty()) content = ReadContentTable(run.Input(a.content));
  if (!a.topics.empty()) topics = ReadTopicAssignments(run.Input(a.topics));
  std::map<int, std::string> labels;
  if (!a.labels.empty()) labels = ReadTopicLabels(run.Input(a.labels));

  const JoinOptions options{!a.network.empty(), !a.content.empty(), !a.topics.empty()};
  const JoinResult joined = JoinFeatures(metrics, network, content, topics, options);
  run.Emit("joined.tsv", FormatJoinedTable(joined.rows));
  if (!a.network.empty()) {
    run.Emit("medians_network.csv", FormatGroupMedians(GroupMedians(joined.rows, kNetworkFeatures)));
  }
  if (!a.content.empty()) {
    run.Emit("medians_content.csv", FormatGroupMedians(GroupMedians(joined.rows, kContentFeatures)));
  }
  if (!a.topics.empty()) {
    const auto stats = ComputeTopicStatistics(joined.rows, labels);
    run.Emit("topic_stats.csv", FormatTopicStatistics(stats));
    const Grid overall = TopicViewGrid(joined.rows, std::nullopt, a.grid, g.threads);
    for (const auto& s : stats) {
      const RatioGrid r = RelativeDifference(TopicViewGrid(joined.rows, s.topic_id, a.grid, g.threads),
                                             overall);
      const std::string label = s.label.empty() ? "" : " (" + s.label + ")";
      run.Emit("ratio_topic_" + std::to_string(s.topic_id) + ".csv",
               FormatGrid(r.ratios,
                          "normalized view share of topic " + std::to_string(s.topic_id) + label +
                              " over all topics; empty cells have no overall views",
                          r.masked));
    }
  }
  run.Stat("joined", joined.rows.size());
  run.Stat("dropped_metrics", joined.dropped_metrics);
  run.Stat("dropped_network", joined.dropped_network);
  run.Stat("dropped_content", joined.dropped_content);
  run.Stat("dropped_topics", joined.dropped_topics);
  run.Finish();
}

struct BinsArgs {
  std::string joined;
  std::vector<std::string> features = {"kcore"};
  std::vector<std::string> targets = {"searchshare", "resistance"};
  size_t bins = 25;
  std::optional<int> topic;
};

void Bins(const CLI::App& sub, const Globals& g, const BinsArgs& a) {
  Run run(sub, g);
  std::vector<JoinedRow> rows = ReadJoinedTable(run.Input(a.joined));
  std::string suffix;
  if (a.topic) {
    std::erase_if(rows, [&](const JoinedRow& r) { return r.topic_id != a.topic; });
    suffix = "_topic" + std::to_string(*a.topic);
  }
  for (const auto& fname : a.features) {
    const Feature f = ParseFeature(fname);
    for (const auto& tname : a.targets) {
      const Target t = ParseTarget(tname);
      run.Emit("bins_" + fname + "_" + tname + suffix + ".csv",
               FormatBinnedQuartiles(ComputeBinnedQuartiles(rows, f, t, a.bins, g.threads)));
    }
  }
  run.Stat("rows", rows.size());
  run.Finish();
}

struct TopicsArgs {
  std::string documents;
  std::string stopwords;
  int topics = 20;
  int iterations = 1000;
  double alpha = 0.0;
  double beta = 0.01;
  size_t top_words = 10;
};

std::vector<std::pair<std::string, std::string>> LoadDocuments(Run& run, const std::string& path) {
  if (!fs::is_directory(path)) return ReadDocuments(run.Input(path));
  // One file per article; the file stem is the title.
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> docs;
  for (const auto& f : files) docs.emplace_back(f.stem().string(), ReadFile(run.Input(f.string())));
  return docs;
}

void Topics(const CLI::App& sub, const Globals& g, const TopicsArgs& a) {
  Run run(sub, g);
  const auto docs = LoadDocuments(run, a.documents);
  StopWords stop;
  if (!a.stopwords.empty()) stop = ReadStopWords(run.Input(a.stopwords));
  const Corpus corpus = BuildCorpus(docs, stop);
  const LdaConfig cfg{a.topics, a.alpha, a.beta, a.iterations, g.seed};
  const TopicModel model = FitLda(corpus, cfg, [&](int it, const GibbsSampler&) {
    if (it % 100 == 0) std::fprintf(stderr, "topics: iteration %d/%d\n", it, a.iterations);
  });

  std::vector<TopicAssignment> assignments;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    if (corpus.documents[d].empty()) continue;  // nothing to assign
    const int k = DominantTopic(model, d);
    assignments.push_back({corpus.documents[d].article, k, model.Theta(d, k)});
  }
  std::sort(assignments.begin(), assignments.end(),
            [](const auto& x, const auto& y) { return x.article < y.article; });
  run.Emit("topics.tsv", FormatTopicAssignments(assignments));
  run.Emit("phi.csv", FormatMatrixCsv(model.phi, model.topics, model.vocabulary_size,
                                      "topic-word distributions; columns follow vocabulary.txt"));
  run.Emit("theta.csv", FormatMatrixCsv(model.theta, model.documents(), model.topics,
                                        "document-topic distributions; rows follow documents.txt"));
  std::string vocab, names, top;
  for (const auto& w : corpus.vocabulary) vocab += w + "\n";
  for (const auto& d : corpus.documents) names += d.article + "\n";
  for (int k = 0; k < model.topics; ++k) {
    top += std::to_string(k) + "\t";
    const auto words = TopWords(model, corpus, k, std::min(a.top_words, model.vocabulary_size));
    for (size_t i = 0; i < words.size(); ++i) top += (i ? " " : "") + words[i];
    top += "\n";
  }
  run.Emit("vocabulary.txt", vocab);
  run.Emit("documents.txt", names);
  run.Emit("top_words.txt", top);
  run.Stat("documents", corpus.documents.size());
  run.Stat("empty_documents", corpus.empty_documents());
  run.Stat("vocabulary", corpus.vocabulary.size());
  run.Stat("tokens", corpus.token_count());
  run.Stat("alpha", model.alpha);
  run.Finish();
}

struct ModelArgs {
  std::string joined;
  std::vector<std::string> targets = {"searchshare", "resistance"};
  std::vector<std::string> groups = {"network", "content-edit", "topic", "all"};
  std::optional<double> threshold;
  int folds = 10;
  int topics = 20;
  GbdtConfig gbdt;
  bool save_models = false;
};

void Model(const CLI::App& sub, const Globals& g, const ModelArgs& a) {
  Run run(sub, g);
  const std::vector<JoinedRow> rows = ReadJoinedTable(run.Input(a.joined));
  std::vector<EvalReport> reports;
  uint64_t stream = 0;
  for (const auto& tname : a.targets) {
    const Target target = ParseTarget(tname);
    const double threshold = a.threshold.value_or(DefaultThreshold(target));
    for (const auto& gname : a.groups) {
      const FeatureGroup group = ParseFeatureGroup(gname);
      const Dataset data = BuildDataset(rows, target, threshold, group, a.topics);
      GbdtConfig cfg = a.gbdt;
      cfg.seed = DeriveSeed(g.seed, stream++);
      EvalReport r = CrossValidate(data, cfg, a.folds, g.seed, g.threads);
      r.task = tname;
      r.feature_group = gname;
      reports.push_back(r);
      std::fprintf(stderr, "model: %s/%s mean AUC %.4f over %zu rows\n", tname.c_str(),
                   gname.c_str(), r.mean_auc, data.rows());
      if (a.save_models) {
        cfg.threads = g.threads;
        const Dataset balanced = data.Subset(Balance(data.y, cfg.seed));
        run.Emit("model_" + tname + "_" + gname + ".txt", SerializeModel(TrainGbdt(balanced, cfg)));
      }
    }
  }
  run.Emit("eval.csv", FormatEvalReports(reports));
  run.Finish();
}

struct SampleArgs {
  std::string table;
  size_t n = 50000;
};

void Sample(const CLI::App& sub, const Globals& g, const SampleArgs& a) {
  Run run(sub, g);
  // Any of our tables works: the first column is the article.
  const HeaderTable t = ReadHeaderTable(run.Input(a.table));
  const size_t col = t.Column("article", a.table);
  std::vector<std::string> articles;
  for (const auto& row : t.rows) articles.push_back(row[col]);
  std::string out;
  for (const auto& s : SampleArticles(std::move(articles), a.n, g.seed)) out += s + "\n";
  run.Emit("sample.txt", out);
  run.Finish();
}

struct ReportArgs {
  std::vector<std::string> from;
};

std::string KindOf(const std::string& file) {
  static const std::vector<std::pair<std::string, std::string>> kinds = {
      {"overlap_", "overlap-curve"},   {"hist_", "histogram"},         {"heatmap_", "heatmap"},
      {"medians_", "median-table"},    {"bins_", "binned-quartiles"},  {"ratio_", "ratio-grid"},
      {"eval", "auc-report"},          {"topic_stats", "topic-table"}, {"group_shares", "group-shares"},
      {"summary", "summary"},          {"model_", "model"},            {"top_words", "top-words"}};
  for (const auto& [prefix, kind] : kinds) {
    if (file.rfind(prefix, 0) == 0) return kind;
  }
  return "table";
}

void Report(const CLI::App& sub, const Globals& g, const ReportArgs& a) {
  if (a.from.empty()) throw UsageError("report needs at least one --from directory");
  Run run(sub, g);
  json files = json::array();
  std::map<std::string, int> used;
  std::vector<std::string> missing;
  for (const auto& dir : a.from) {
    const fs::path manifest = fs::path(dir) / "manifest.json";
    if (!fs::exists(manifest)) {
      missing.push_back(dir + " (no manifest.json; run a subcommand with --out " + dir + " first)");
      continue;
    }
    const json m = json::parse(ReadFile(run.Input(manifest.string())), nullptr, false);
    if (!m.is_object() || !m.contains("subcommand") || !m.contains("outputs")) {
      throw DataError(manifest.string() + ": not a clickroles manifest");
    }
    const std::string subcommand = m["subcommand"];
    if (subcommand == "report") continue;
    const int n = ++used[subcommand];
    const std::string folder = n == 1 ? subcommand : subcommand + "-" + std::to_string(n);
    for (const std::string name : m["outputs"]) {
      const fs::path src = fs::path(dir) / name;
      if (!fs::exists(src)) {
        missing.push_back(src.string() + " (re-run " + subcommand + " --out " + dir + ")");
        continue;
      }
      const std::string contents = ReadFile(run.Input(src.string()));
      const std::string dest = folder + "/" + name;
      run.Emit(dest, contents);
      files.push_back({{"file", dest}, {"kind", KindOf(name)}, {"subcommand", subcommand},
                       {"sha256", Sha256Hex(contents)}});
    }
  }
  if (!missing.empty()) {
    std::string msg = "report inputs missing:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw DataError(msg);
  }
  if (files.empty()) throw DataError("report found no analysis outputs to bundle");
  std::sort(files.begin(), files.end(),
            [](const json& x, const json& y) { return x["file"] < y["file"]; });
  run.Emit("index.json", json{{"files", files}, {"tool", "clickroles"}, {"version", kVersion}}.dump(2) + "\n");
  run.Finish();
}

}  // namespace
}  // namespace clickroles

int main(int argc, char** argv) {
  using namespace clickroles;
  CLI::App app{"Traffic-role analysis of clickstream transition dumps."};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.set_version_flag("--version", kVersion);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_flag("--strict", g.strict, "Fail on the first malformed input line");
  app.add_option("--out", g.out, "Output directory");

  auto add = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  IngestArgs ingest;
  CLI::App* s_ingest = add("ingest", "Aggregate clickstream dumps into a traffic table");
  s_ingest->add_option("--input,input", ingest.inputs, "Clickstream TSV files (plain or gzip)")->required();
  s_ingest->add_option("--min-count", ingest.min_count, "Drop transitions below this count")->capture_default_str();
  s_ingest->add_flag("--keep-referrer-only", ingest.keep_referrer_only,
                     "Keep articles that only appear as referrers");
  s_ingest->add_option("--map", ingest.mapping,
                       "Referrer mapping override key=tok1,tok2 (search, missing, external, "
                       "internal_type, types)");
  s_ingest->add_option("--header", ingest.header, "Regex for an optional header line")->capture_default_str();

  MetricsArgs metrics;
  CLI::App* s_metrics = add("metrics", "Searchshare, resistance, quadrants, histograms, heatmaps");
  s_metrics->add_option("--traffic", metrics.traffic, "Traffic table from ingest")->required();
  s_metrics->add_option("--bins", metrics.bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
  s_metrics->add_option("--grid", metrics.grid, "Heatmap grid size")->capture_default_str()->check(CLI::PositiveNumber);

  OverlapArgs overlap;
  CLI::App* s_overlap = add("overlap", "Cumulative top-k overlap between traffic rankings");
  s_overlap->add_option("--traffic", overlap.traffic, "Traffic table from ingest")->required();
  s_overlap->add_option("--pair", overlap.pairs, "Ranking pair a:b over total, in_se, in_nav, out_nav")
      ->capture_default_str();
  s_overlap->add_option("--k", overlap.schedule, "k schedule")
      ->capture_default_str()
      ->check(CLI::IsMember({"log", "all"}));

  GraphArgs graph;
  CLI::App* s_graph = add("graph", "Degrees and k-core numbers of the article link graph");
  s_graph->add_option("--edges", graph.edges, "Edge list (source, target)");
  s_graph->add_option("--clickstream", graph.clickstream,
                      "Approximate the graph from clickstream link transitions");

  FeaturesArgs features;
  CLI::App* s_features = add("features", "Join feature tables; group medians and topic statistics");
  s_features->add_option("--metrics", features.metrics, "Metrics table")->required();
  s_features->add_option("--network", features.network, "Network table from graph");
  s_features->add_option("--content", features.content, "Content/edit feature table");
  s_features->add_option("--topics", features.topics, "Topic assignments");
  s_features->add_option("--labels", features.labels, "Topic labels (id<TAB>label)");
  s_features->add_option("--grid", features.grid, "Topic heatmap grid size")->capture_default_str();

  BinsArgs bins;
  CLI::App* s_bins = add("bins", "Target quartiles over equal-count feature bins");
  s_bins->add_option("--joined", bins.joined, "Joined table from features")->required();
  s_bins->add_option("--feature", bins.features, "Binning feature")->capture_default_str();
  s_bins->add_option("--target", bins.targets, "searchshare or resistance")->capture_default_str();
  s_bins->add_option("--bins", bins.bins, "Number of bins")->capture_default_str()->check(CLI::PositiveNumber);
  s_bins->add_option("--topic", bins.topic, "Restrict to one topic id");

  TopicsArgs topics;
  CLI::App* s_topics = add("topics", "Fit an LDA topic model and assign dominant topics");
  s_topics->add_option("--documents", topics.documents,
                       "article<TAB>text file, or a directory of one file per article")
      ->required();
  s_topics->add_option("--stopwords", topics.stopwords, "Stop word list");
  s_topics->add_option("--topics", topics.topics, "Number of topics")->capture_default_str();
  s_topics->add_option("--iterations", topics.iterations, "Gibbs sweeps")->capture_default_str()->check(CLI::PositiveNumber);
  s_topics->add_option("--alpha", topics.alpha, "Document-topic prior (0: 50/topics)")->capture_default_str();
  s_topics->add_option("--beta", topics.beta, "Topic-word prior")->capture_default_str();
  s_topics->add_option("--top-words", topics.top_words, "Words listed per topic")->capture_default_str();

  ModelArgs model;
  CLI::App* s_model = add("model", "Cross-validated boosted-tree classifiers per feature group");
  s_model->add_option("--joined", model.joined, "Joined table from features")->required();
  s_model->add_option("--target", model.targets, "searchshare and/or resistance")->capture_default_str();
  s_model->add_option("--group", model.groups, "network, content-edit, topic, all")->capture_default_str();
  s_model->add_option("--threshold", model.threshold, "Label threshold (default: 0.66 / 0.88)");
  s_model->add_option("--folds", model.folds, "Cross-validation folds")->capture_default_str();
  s_model->add_option("--topics", model.topics, "Topic count for the one-hot encoding")->capture_default_str();
  s_model->add_option("--trees", model.gbdt.n_trees, "Boosting rounds")->capture_default_str();
  s_model->add_option("--depth", model.gbdt.max_depth, "Tree depth")->capture_default_str();
  s_model->add_option("--learning-rate", model.gbdt.learning_rate, "Shrinkage")->capture_default_str();
  s_model->add_option("--min-leaf", model.gbdt.min_leaf, "Minimum rows per leaf")->capture_default_str();
  s_model->add_option("--subsample", model.gbdt.subsample, "Row subsample per tree")->capture_default_str();
  s_model->add_flag("--save-models", model.save_models, "Also fit and save one model per task");

  ReportArgs report;
  CLI::App* s_report = add("report", "Bundle analysis outputs with an index");
  s_report->add_option("--from", report.from, "Output directories of earlier runs");

  SampleArgs sample;
  CLI::App* s_sample = add("sample", "Seeded uniform sample of articles");
  s_sample->add_option("--table", sample.table, "Any table with an article column")->required();
  s_sample->add_option("--n", sample.n, "Sample size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    SetDefaultThreads(g.threads);
    if (*s_ingest) Ingest(*s_ingest, g, ingest);
    if (*s_metrics) Metrics(*s_metrics, g, metrics);
    if (*s_overlap) Overlap(*s_overlap, g, overlap);
    if (*s_graph) Graph(*s_graph, g, graph);
    if (*s_features) Features(*s_features, g, features);
    if (*s_bins) Bins(*s_bins, g, bins);
    if (*s_topics) Topics(*s_topics, g, topics);
    if (*s_model) Model(*s_model, g, model);
    if (*s_report) Report(*s_report, g, report);
    if (*s_sample) Sample(*s_sample, g, sample);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
