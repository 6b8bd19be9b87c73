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

#include "mapens/partition.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "mapens/errors.h"

namespace mapens {

std::int64_t UnitTable::total(int node) const {
  const auto r = row(node);
  return std::accumulate(r.begin(), r.end(), std::int64_t{0});
}

DistrictMap::DistrictMap(std::shared_ptr<const UnitTable> units,
                         std::vector<std::string> labels,
                         std::vector<int> assignment, std::uint64_t step)
    : units_(std::move(units)),
      labels_(std::move(labels)),
      assignment_(std::move(assignment)),
      step_(step) {
  if (!units_) throw ContractError("district map without a unit table");
  if (assignment_.size() != units_->size()) {
    throw ContractError("assignment size does not match the unit table");
  }
  const std::size_t z = labels_.size();
  const std::size_t k = units_->groups;
  tallies_.assign(z * k, 0);
  totals_.assign(z, 0);
  sizes_.assign(z, 0);
  for (std::size_t node = 0; node < assignment_.size(); ++node) {
    const int d = assignment_[node];
    if (d < 0 || static_cast<std::size_t>(d) >= z) {
      throw ContractError("assignment refers to an unknown district");
    }
    const auto r = units_->row(static_cast<int>(node));
    for (std::size_t j = 0; j < k; ++j) {
      tallies_[d * k + j] += r[j];
      totals_[d] += r[j];
    }
    ++sizes_[d];
  }
}

void DistrictMap::flip(std::span<const int> chunk, int target) {
  if (chunk.empty()) {
    ++step_;
    return;
  }
  const int z = static_cast<int>(labels_.size());
  if (target < 0 || target >= z) throw ContractError("flip to unknown district");
  const int source = assignment_.at(chunk.front());
  if (source == target) throw ContractError("flip source equals target");
  for (int node : chunk) {
    if (assignment_.at(node) != source) {
      throw ContractError("flip chunk spans more than one district");
    }
  }
  const std::size_t k = units_->groups;
  for (int node : chunk) {
    const auto r = units_->row(node);
    for (std::size_t j = 0; j < k; ++j) {
      tallies_[source * k + j] -= r[j];
      tallies_[target * k + j] += r[j];
      totals_[source] -= r[j];
      totals_[target] += r[j];
    }
    assignment_[node] = target;
  }
  sizes_[source] -= chunk.size();
  sizes_[target] += chunk.size();
  ++step_;
}

bool DistrictMap::operator==(const DistrictMap& other) const {
  return labels_ == other.labels_ && assignment_ == other.assignment_ &&
         tallies_ == other.tallies_ && totals_ == other.totals_ &&
         step_ == other.step_;
}

DistrictMap apply_flip(const DistrictMap& map, std::span<const int> chunk,
                       int target) {
  DistrictMap out = map;
  out.flip(chunk, target);
  return out;
}

std::vector<DistrictEdge> district_edges(const DistrictMap& map,
                                         const AdjacencyGraph& graph) {
  std::map<std::pair<int, int>, std::vector<int>> cut;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edge(e);
    int a = map.district_of(edge.u);
    int b = map.district_of(edge.v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    cut[{a, b}].push_back(static_cast<int>(e));
  }
  std::vector<DistrictEdge> out;
  out.reserve(cut.size());
  for (auto& [pair, edges] : cut) {
    out.push_back({pair.first, pair.second, std::move(edges)});
  }
  return out;
}

ChainRegion from_crosswalk(const Crosswalk& crosswalk,
                           const AdjacencyGraph& graph,
                           std::span<const SpatialUnit> units) {
  if (graph.node_count() != units.size()) {
    throw ContractError("graph and unit list disagree in size");
  }
  const std::vector<std::string> labels = crosswalk.labels();
  if (labels.size() < 2) {
    throw RegionError("region has " + std::to_string(labels.size()) +
                      " usable district(s); at least 2 are needed");
  }
  std::unordered_map<std::string, int> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    label_index[labels[i]] = static_cast<int>(i);
  }

  auto table = std::make_shared<UnitTable>();
  table->groups = units.empty() ? 0 : units.front().counts.size();
  std::vector<int> keep;
  std::vector<int> assignment;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (graph.ids()[i] != units[i].id) {
      throw ContractError("graph node order differs from the unit list");
    }
    auto it = crosswalk.assignment.find(units[i].id);
    if (it == crosswalk.assignment.end()) continue;
    keep.push_back(static_cast<int>(i));
    assignment.push_back(label_index.at(it->second));
    table->ids.push_back(units[i].id);
    table->counts.insert(table->counts.end(), units[i].counts.begin(),
                         units[i].counts.end());
  }
  DistrictMap seed(std::move(table), labels, std::move(assignment), 0);
  return {graph.induced(keep), std::move(seed), std::move(keep)};
}

}  // namespace mapens
