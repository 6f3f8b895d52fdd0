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

#include "clickroles/linkgraph.h"

#include <omp.h>

#include <algorithm>

#include "clickroles/errors.h"
#include "clickroles/io.h"
#include "clickroles/parallel.h"

namespace clickroles {

std::optional<NodeId> LinkGraph::Find(std::string_view title) const {
  auto it = index_.find(std::string(title));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LinkGraph::Undirected LinkGraph::Project() const {
  const size_t n = num_nodes();
  Undirected u;
  std::vector<uint64_t> count(n + 1, 0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t : OutEdges(s)) {
      ++count[s];
      ++count[t];
    }
  }
  std::vector<uint64_t> start(n + 1, 0);
  for (size_t v = 0; v < n; ++v) start[v + 1] = start[v] + count[v];
  std::vector<NodeId> raw(start[n]);
  std::vector<uint64_t> fill(start.begin(), start.end() - 1);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t : OutEdges(s)) {
      raw[fill[s]++] = t;
      raw[fill[t]++] = s;
    }
  }
  u.offsets.assign(n + 1, 0);
  u.neighbours.reserve(raw.size());
  for (size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + start[v];
    auto last = raw.begin() + start[v + 1];
    std::sort(first, last);
    last = std::unique(first, last);
    u.neighbours.insert(u.neighbours.end(), first, last);
    u.offsets[v + 1] = u.neighbours.size();
  }
  return u;
}

NodeId LinkGraphBuilder::Intern(std::string_view title) {
  auto it = index_.find(std::string(title));
  if (it != index_.end()) return it->second;
  const NodeId id = static_cast<NodeId>(titles_.size());
  titles_.emplace_back(title);
  index_.emplace(titles_.back(), id);
  return id;
}

void LinkGraphBuilder::AddEdge(std::string_view source, std::string_view target) {
  ++edges_seen_;
  const NodeId s = Intern(source);
  const NodeId t = Intern(target);
  if (s == t) {
    ++self_loops_;
    return;
  }
  edges_.emplace_back(s, t);
}

LinkGraph LinkGraphBuilder::Build() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  LinkGraph g;
  const size_t n = titles_.size();
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(edges_.size());
  for (const auto& [s, t] : edges_) {
    ++g.offsets_[s + 1];
    g.targets_.push_back(t);
  }
  for (size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.titles_ = std::move(titles_);
  g.index_ = std::move(index_);
  edges_.clear();
  edges_.shrink_to_fit();
  titles_.clear();
  index_.clear();
  return g;
}

namespace {

template <typename OnPair>
void ReadPairs(const std::string& path, bool strict, EdgeLoadStats* stats, OnPair on_pair,
               size_t expected_fields) {
  LineReader reader(path);
  std::string line;
  while (reader.Next(&line)) {
    ++stats->lines;
    auto f = SplitTabs(line);
    if (f.size() != expected_fields || f[0].empty() || f[1].empty()) {
      if (strict) {
        throw DataError(path + ":" + std::to_string(reader.line_number()) +
                        ": malformed edge line");
      }
      ++stats->malformed;
      continue;
    }
    on_pair(f);
  }
}

}  // namespace

LinkGraph LoadEdgeList(const std::string& path, bool strict, EdgeLoadStats* stats) {
  EdgeLoadStats local;
  LinkGraphBuilder builder;
  ReadPairs(
      path, strict, &local, [&](const auto& f) { builder.AddEdge(f[0], f[1]); }, 2);
  const uint64_t kept = builder.edges_seen() - builder.self_loops();
  LinkGraph g = builder.Build();
  local.self_loops = builder.self_loops();
  local.duplicates = kept - g.num_edges();
  if (stats != nullptr) *stats = local;
  return g;
}

LinkGraph LoadClickstreamLinks(const std::string& path, bool strict, EdgeLoadStats* stats) {
  EdgeLoadStats local;
  LinkGraphBuilder builder;
  ReadPairs(
      path, strict, &local,
      [&](const auto& f) {
        if (f[2] == "link") builder.AddEdge(f[0], f[1]);
      },
      4);
  const uint64_t kept = builder.edges_seen() - builder.self_loops();
  LinkGraph g = builder.Build();
  local.self_loops = builder.self_loops();
  local.duplicates = kept - g.num_edges();
  if (stats != nullptr) *stats = local;
  return g;
}

std::vector<NodeDegrees> ComputeDegrees(const LinkGraph& g, int threads) {
  const size_t n = g.num_nodes();
  const int nt = ResolveThreads(threads);
  std::vector<NodeDegrees> out(n);
  std::vector<std::vector<uint32_t>> in_local(nt);
#pragma omp parallel num_threads(nt)
  {
    auto& mine = in_local[omp_get_thread_num()];
    mine.assign(n, 0);
#pragma omp for schedule(static)
    for (long s = 0; s < static_cast<long>(n); ++s) {
      auto edges = g.OutEdges(static_cast<NodeId>(s));
      out[s].out_degree = static_cast<uint32_t>(edges.size());
      for (NodeId t : edges) ++mine[t];
    }
#pragma omp for schedule(static)
    for (long v = 0; v < static_cast<long>(n); ++v) {
      uint32_t total = 0;
      for (const auto& l : in_local) total += l[v];
      out[v].in_degree = total;
    }
  }
  return out;
}

namespace serial {

std::vector<NodeDegrees> ComputeDegrees(const LinkGraph& g) {
  std::vector<NodeDegrees> out(g.num_nodes());
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    for (NodeId t : g.OutEdges(s)) {
      ++out[s].out_degree;
      ++out[t].in_degree;
    }
  }
  return out;
}

}  // namespace serial

std::vector<uint32_t> KCoreDecomposition(const LinkGraph::Undirected& u) {
  const size_t n = u.offsets.empty() ? 0 : u.offsets.size() - 1;
  std::vector<uint32_t> deg(n);
  uint32_t max_deg = 0;
  for (size_t v = 0; v < n; ++v) {
    deg[v] = static_cast<uint32_t>(u.degree(static_cast<NodeId>(v)));
    max_deg = std::max(max_deg, deg[v]);
  }
  // bin_start[d] is the first position in `order` holding a node of degree d.
  std::vector<size_t> bin_start(max_deg + 2, 0);
  for (size_t v = 0; v < n; ++v) ++bin_start[deg[v] + 1];
  for (size_t d = 1; d < bin_start.size(); ++d) bin_start[d] += bin_start[d - 1];
  std::vector<NodeId> order(n);
  std::vector<size_t> pos(n);
  {
    std::vector<size_t> fill(bin_start.begin(), bin_start.end() - 1);
    for (size_t v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      order[pos[v]] = static_cast<NodeId>(v);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId w : u.adj(v)) {
      if (deg[w] <= deg[v]) continue;
      // Swap w with the first node of its bin, then shrink the bin.
      const uint32_t dw = deg[w];
      const size_t pw = pos[w];
      const size_t first = bin_start[dw];
      const NodeId head = order[first];
      if (head != w) {
        order[pw] = head;
        pos[head] = pw;
        order[first] = w;
        pos[w] = first;
      }
      ++bin_start[dw];
      --deg[w];
    }
  }
  return deg;
}

std::vector<uint32_t> KCoreDecomposition(const LinkGraph& g) {
  return KCoreDecomposition(g.Project());
}

std::vector<NetworkFeatures> ComputeNetworkFeatures(const LinkGraph& g, int threads) {
  const auto degrees = ComputeDegrees(g, threads);
  const auto cores = KCoreDecomposition(g);
  std::vector<NetworkFeatures> rows(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    rows[v] = NetworkFeatures{g.title(v), degrees[v].in_degree, degrees[v].out_degree,
                              degrees[v].degree(), cores[v]};
  }
  std::sort(rows.begin(), rows.end(),
            [](const NetworkFeatures& a, const NetworkFeatures& b) { return a.article < b.article; });
  return rows;
}

std::string FormatNetworkTable(std::span<const NetworkFeatures> rows) {
  std::string out = "article\tin_degree\tout_degree\tdegree\tkcore\n";
  for (const auto& r : rows) {
    out += r.article + "\t" + std::to_string(r.in_degree) + "\t" + std::to_string(r.out_degree) +
           "\t" + std::to_string(r.degree) + "\t" + std::to_string(r.kcore) + "\n";
  }
  return out;
}

std::vector<NetworkFeatures> ReadNetworkTable(const std::string& path) {
  HeaderTable t = ReadHeaderTable(path);
  const size_t ca = t.Column("article", path);
  const size_t ci = t.Column("in_degree", path);
  const size_t co = t.Column("out_degree", path);
  const size_t cd = t.Column("degree", path);
  const size_t ck = t.Column("kcore", path);
  std::vector<NetworkFeatures> rows;
  rows.reserve(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    auto in = ParseUnsigned(r[ci]);
    auto out = ParseUnsigned(r[co]);
    auto deg = ParseUnsigned(r[cd]);
    auto core = ParseUnsigned(r[ck]);
    if (!in || !out || !deg || !core) {
      throw DataError(path + ": bad numeric field in row " + std::to_string(i + 2));
    }
    if (*deg != *in + *out) {
      throw DataError(path + ": degree != in_degree + out_degree in row " + std::to_string(i + 2));
    }
    rows.push_back(NetworkFeatures{r[ca], static_cast<uint32_t>(*in), static_cast<uint32_t>(*out),
                                   static_cast<uint32_t>(*deg), static_cast<uint32_t>(*core)});
  }
  return rows;
}

}  // namespace clickroles
