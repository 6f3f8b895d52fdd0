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

#ifndef CLICKROLES_LINKGRAPH_H_
#define CLICKROLES_LINKGRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace clickroles {

using NodeId = uint32_t;

// Directed article link network in compressed sparse row form. Node ids
// are dense and assigned by first appearance in the edge stream.
class LinkGraph {
 public:
  size_t num_nodes() const { return titles_.size(); }
  size_t num_edges() const { return targets_.size(); }

  const std::string& title(NodeId id) const { return titles_[id]; }
  std::optional<NodeId> Find(std::string_view title) const;

  // Out-neighbours of `id`, ascending by id.
  std::span<const NodeId> OutEdges(NodeId id) const {
    return {targets_.data() + offsets_[id], targets_.data() + offsets_[id + 1]};
  }

  // Undirected projection: an edge u-v exists if u->v or v->u does.
  // Neighbour lists are ascending and duplicate-free.
  struct Undirected {
    std::vector<uint64_t> offsets;
    std::vector<NodeId> neighbours;
    size_t degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
    std::span<const NodeId> adj(NodeId v) const {
      return {neighbours.data() + offsets[v], neighbours.data() + offsets[v + 1]};
    }
  };
  Undirected Project() const;

 private:
  friend class LinkGraphBuilder;
  std::vector<std::string> titles_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<uint64_t> offsets_{0};
  std::vector<NodeId> targets_;
};

class LinkGraphBuilder {
 public:
  // Self-loops are dropped; duplicates are removed in Build().
  void AddEdge(std::string_view source, std::string_view target);
  LinkGraph Build();

  uint64_t self_loops() const { return self_loops_; }
  uint64_t edges_seen() const { return edges_seen_; }

 private:
  NodeId Intern(std::string_view title);

  std::vector<std::string> titles_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  uint64_t self_loops_ = 0;
  uint64_t edges_seen_ = 0;
};

struct EdgeLoadStats {
  uint64_t lines = 0;
  uint64_t malformed = 0;
  uint64_t self_loops = 0;
  uint64_t duplicates = 0;
};

// Tab-separated (source, target) list, plain or gzip. Strict mode throws
// DataError on the first malformed line.
LinkGraph LoadEdgeList(const std::string& path, bool strict, EdgeLoadStats* stats);

// Approximates the link network from clickstream link transitions. This
// only sees links that were clicked often enough to be published, so it
// underestimates the real graph.
LinkGraph LoadClickstreamLinks(const std::string& path, bool strict, EdgeLoadStats* stats);

struct NodeDegrees {
  uint32_t in_degree = 0;
  uint32_t out_degree = 0;
  uint32_t degree() const { return in_degree + out_degree; }
  bool operator==(const NodeDegrees&) const = default;
};

std::vector<NodeDegrees> ComputeDegrees(const LinkGraph& g, int threads = 0);

// Core numbers on the undirected projection (bucket peeling, linear time).
std::vector<uint32_t> KCoreDecomposition(const LinkGraph& g);
std::vector<uint32_t> KCoreDecomposition(const LinkGraph::Undirected& u);

namespace serial {
std::vector<NodeDegrees> ComputeDegrees(const LinkGraph& g);
}  // namespace serial

struct NetworkFeatures {
  std::string article;
  uint32_t in_degree = 0;
  uint32_t out_degree = 0;
  uint32_t degree = 0;
  uint32_t kcore = 0;
};

std::vector<NetworkFeatures> ComputeNetworkFeatures(const LinkGraph& g, int threads = 0);

// article, in_degree, out_degree, degree, kcore with a header line; rows
// sorted by article.
std::string FormatNetworkTable(std::span<const NetworkFeatures> rows);
std::vector<NetworkFeatures> ReadNetworkTable(const std::string& path);

}  // namespace clickroles

#endif  // CLICKROLES_LINKGRAPH_H_
