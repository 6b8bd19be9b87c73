// Copyright 2026 The mapens Authors.
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

#ifndef MAPENS_ADJACENCY_H_
#define MAPENS_ADJACENCY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mapens/region.h"

namespace mapens {

// Undirected rook-adjacency graph. Nodes are dense indices into `ids`; edges
// are stored once with u < v in sorted order and mirrored into a CSR
// neighbor list.
class AdjacencyGraph {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    double shared_perimeter = 0.0;
    bool operator==(const Edge&) const = default;
  };

  AdjacencyGraph() = default;
  // Throws ContractError on self-loops, duplicates, out-of-range endpoints or
  // non-positive shared perimeters.
  AdjacencyGraph(std::vector<std::string> ids, std::vector<Edge> edges);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }

  std::span<const int> neighbors(int node) const {
    return {adjacency_.data() + offsets_[node],
            adjacency_.data() + offsets_[node + 1]};
  }
  // Edge indices parallel to neighbors(node).
  std::span<const int> incident_edges(int node) const {
    return {incident_.data() + offsets_[node],
            incident_.data() + offsets_[node + 1]};
  }

  // Subgraph over `keep` (node indices, in the order given).
  AdjacencyGraph induced(std::span<const int> keep) const;

  nlohmann::json to_json() const;
  static AdjacencyGraph from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<int> adjacency_;
  std::vector<int> incident_;
};

// Two units are adjacent iff they share boundary of positive length.
AdjacencyGraph build_adjacency(std::span<const SpatialUnit> units);

}  // namespace mapens

#endif  // MAPENS_ADJACENCY_H_
