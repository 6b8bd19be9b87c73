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

#ifndef MAPENS_PARTITION_H_
#define MAPENS_PARTITION_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mapens/adjacency.h"
#include "mapens/crosswalk.h"
#include "mapens/region.h"

namespace mapens {

// Population counts for the chain's nodes, row-major (node, group).
struct UnitTable {
  std::vector<std::string> ids;
  std::size_t groups = 0;
  std::vector<std::int64_t> counts;

  std::size_t size() const { return ids.size(); }
  std::span<const std::int64_t> row(int node) const {
    return {counts.data() + static_cast<std::size_t>(node) * groups, groups};
  }
  std::int64_t total(int node) const;
};

// A chain state: every node carries one district index. Per-district group
// tallies and totals are kept in step with the assignment on every flip.
class DistrictMap {
 public:
  DistrictMap(std::shared_ptr<const UnitTable> units,
              std::vector<std::string> labels, std::vector<int> assignment,
              std::uint64_t step = 0);

  std::size_t district_count() const { return labels_.size(); }
  std::size_t node_count() const { return assignment_.size(); }
  std::size_t group_count() const { return units_->groups; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& assignment() const { return assignment_; }
  int district_of(int node) const { return assignment_[node]; }
  const UnitTable& units() const { return *units_; }
  const std::shared_ptr<const UnitTable>& unit_table() const { return units_; }

  std::span<const std::int64_t> tally(int district) const {
    return {tallies_.data() + static_cast<std::size_t>(district) * group_count(),
            group_count()};
  }
  std::int64_t total(int district) const { return totals_[district]; }
  const std::vector<std::int64_t>& totals() const { return totals_; }
  std::size_t district_size(int district) const { return sizes_[district]; }

  std::uint64_t step() const { return step_; }
  void set_step(std::uint64_t step) { step_ = step; }

  // Relabels `chunk` to `target` and bumps the step. All chunk nodes must
  // share one source district different from `target` (ContractError
  // otherwise). An empty chunk only advances the step.
  void flip(std::span<const int> chunk, int target);

  bool operator==(const DistrictMap& other) const;

 private:
  std::shared_ptr<const UnitTable> units_;
  std::vector<std::string> labels_;
  std::vector<int> assignment_;
  std::vector<std::int64_t> tallies_;
  std::vector<std::int64_t> totals_;
  std::vector<std::size_t> sizes_;
  std::uint64_t step_ = 0;
};

DistrictMap apply_flip(const DistrictMap& map, std::span<const int> chunk,
                       int target);

// A pair of districts (a < b) and every graph edge that crosses between them.
struct DistrictEdge {
  int a = 0;
  int b = 0;
  std::vector<int> cut_edges;  // sorted edge indices
};

// Sorted by (a, b).
std::vector<DistrictEdge> district_edges(const DistrictMap& map,
                                         const AdjacencyGraph& graph);

// The seed state and the graph restricted to assigned units. Node i of
// `graph` is node i of `seed`.
struct ChainRegion {
  AdjacencyGraph graph;
  DistrictMap seed;
  std::vector<int> source_units;  // node -> index into the input unit list
};

// Builds the t = 0 map from a crosswalk. Throws RegionError when fewer than
// two districts remain.
ChainRegion from_crosswalk(const Crosswalk& crosswalk,
                           const AdjacencyGraph& graph,
                           std::span<const SpatialUnit> units);

}  // namespace mapens

#endif  // MAPENS_PARTITION_H_
