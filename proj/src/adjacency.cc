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

#include "mapens/adjacency.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include <boost/geometry/index/rtree.hpp>

#include "mapens/errors.h"

namespace mapens {
namespace {

namespace bgi = boost::geometry::index;

// Coordinates are compared at this fraction of the layer's extent; shared
// boundary shorter than kMinSharedRelative of the extent is corner contact.
constexpr double kToleranceRelative = 1e-9;
constexpr double kMinSharedRelative = 1e-7;

}  // namespace

AdjacencyGraph::AdjacencyGraph(std::vector<std::string> ids,
                               std::vector<Edge> edges)
    : ids_(std::move(ids)), edges_(std::move(edges)) {
  const int n = static_cast<int>(ids_.size());
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw ContractError("edge endpoint out of range");
    if (e.u == e.v) throw ContractError("self-loop in adjacency graph");
    if (!(e.shared_perimeter > 0.0)) {
      throw ContractError("edge with non-positive shared perimeter");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ContractError("duplicate edge in adjacency graph");
    }
  }

  std::vector<std::size_t> degree(ids_.size() + 1, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(ids_.size() + 1, 0);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    offsets_[i + 1] = offsets_[i] + degree[i];
  }
  adjacency_.resize(offsets_.back());
  incident_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    adjacency_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = static_cast<int>(k);
    adjacency_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = static_cast<int>(k);
  }
}

AdjacencyGraph AdjacencyGraph::induced(std::span<const int> keep) const {
  std::vector<int> remap(ids_.size(), -1);
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = static_cast<int>(i);
    ids.push_back(ids_[keep[i]]);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (remap[e.u] >= 0 && remap[e.v] >= 0) {
      edges.push_back({remap[e.u], remap[e.v], e.shared_perimeter});
    }
  }
  return AdjacencyGraph(std::move(ids), std::move(edges));
}

nlohmann::json AdjacencyGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"u", ids_[e.u]}, {"v", ids_[e.v]},
                     {"shared_perimeter", e.shared_perimeter}});
  }
  return {{"nodes", ids_}, {"edges", edges}};
}

AdjacencyGraph AdjacencyGraph::from_json(const nlohmann::json& j) {
  try {
    auto ids = j.at("nodes").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      index[ids[i]] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({index.at(e.at("u").get<std::string>()),
                       index.at(e.at("v").get<std::string>()),
                       e.at("shared_perimeter").get<double>()});
    }
    return AdjacencyGraph(std::move(ids), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("graph.json: ") + e.what());
  } catch (const std::out_of_range&) {
    throw IngestError("graph.json: edge references an unknown node");
  }
}

AdjacencyGraph build_adjacency(std::span<const SpatialUnit> units) {
  std::vector<std::string> ids;
  std::vector<Box> boxes;
  ids.reserve(units.size());
  boxes.reserve(units.size());
  Box extent;
  bg::assign_inverse(extent);
  for (const auto& u : units) {
    ids.push_back(u.id);
    boxes.push_back(bg::return_envelope<Box>(u.geometry));
    bg::expand(extent, boxes.back());
  }
  if (units.empty()) return AdjacencyGraph({}, {});

  const double span = std::max(extent.max_corner().x() - extent.min_corner().x(),
                               extent.max_corner().y() - extent.min_corner().y());
  const double tol = kToleranceRelative * std::max(span, 1.0);
  const double min_shared = kMinSharedRelative * std::max(span, 1.0);

  using Entry = std::pair<Box, int>;
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    Box b = boxes[i];
    b.min_corner() = Point(b.min_corner().x() - tol, b.min_corner().y() - tol);
    b.max_corner() = Point(b.max_corner().x() + tol, b.max_corner().y() + tol);
    entries.emplace_back(b, static_cast<int>(i));
  }
  bgi::rtree<Entry, bgi::quadratic<16>> index(entries.begin(), entries.end());

  std::vector<AdjacencyGraph::Edge> edges;
  for (std::size_t i = 0; i < units.size(); ++i) {
    std::vector<Entry> hits;
    index.query(bgi::intersects(entries[i].first), std::back_inserter(hits));
    std::sort(hits.begin(), hits.end(),
              [](const Entry& a, const Entry& b) { return a.second < b.second; });
    for (const auto& [box, j] : hits) {
      if (j <= static_cast<int>(i)) continue;
      const double shared =
          shared_boundary_length(units[i].geometry, units[j].geometry, tol);
      if (shared > min_shared) {
        edges.push_back({static_cast<int>(i), j, shared});
      }
    }
  }
  return AdjacencyGraph(std::move(ids), std::move(edges));
}

}  // namespace mapens
