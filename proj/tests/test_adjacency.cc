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

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mapens/adjacency.h"
#include "mapens/errors.h"
#include "support.h"

using namespace mapens;

TEST_CASE("2x2 grid has four rook edges") {
  const auto g = testing::make_grid(2, 2);
  CHECK(g.graph.edge_count() == 4);
  std::set<std::pair<int, int>> edges;
  for (const auto& e : g.graph.edges()) {
    edges.insert({e.u, e.v});
    CHECK(e.shared_perimeter == Catch::Approx(1.0));
  }
  CHECK(edges == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("corner contact is not adjacency") {
  std::vector<SpatialUnit> units(2);
  units[0].id = "a";
  units[0].geometry = make_rectangle(0, 0, 1, 1);
  units[1].id = "b";
  units[1].geometry = make_rectangle(1, 1, 2, 2);
  CHECK(build_adjacency(units).edge_count() == 0);
}

TEST_CASE("3x1 strip is a path") {
  const auto g = testing::make_grid(1, 3);
  REQUIRE(g.graph.edge_count() == 2);
  CHECK(g.graph.neighbors(0).size() == 1);
  CHECK(g.graph.neighbors(1).size() == 2);
  CHECK(g.graph.neighbors(2).size() == 1);
}

TEST_CASE("offset tiles share partial edges") {
  std::vector<SpatialUnit> units(2);
  units[0].id = "a";
  units[0].geometry = make_rectangle(0, 0, 2, 1);
  units[1].id = "b";
  units[1].geometry = make_rectangle(1.5, 1, 3, 2);
  const auto g = build_adjacency(units);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edge(0).shared_perimeter == Catch::Approx(0.5));
}

TEST_CASE("graph JSON round trip and induced subgraph") {
  const auto g = testing::make_grid(3, 3);
  const auto back = AdjacencyGraph::from_json(g.graph.to_json());
  CHECK(back.ids() == g.graph.ids());
  CHECK(back.edges() == g.graph.edges());

  const std::vector<int> keep{0, 1, 2};
  const auto row = g.graph.induced(keep);
  CHECK(row.node_count() == 3);
  CHECK(row.edge_count() == 2);
}

TEST_CASE("graph constructor rejects bad edges") {
  using E = AdjacencyGraph::Edge;
  CHECK_THROWS_AS(AdjacencyGraph({"a", "b"}, {E{0, 0, 1.0}}), ContractError);
  CHECK_THROWS_AS(AdjacencyGraph({"a", "b"}, {E{0, 1, 1.0}, E{1, 0, 1.0}}),
                  ContractError);
  CHECK_THROWS_AS(AdjacencyGraph({"a", "b"}, {E{0, 2, 1.0}}), ContractError);
  CHECK_THROWS_AS(AdjacencyGraph({"a", "b"}, {E{0, 1, 0.0}}), ContractError);
}

TEST_CASE("edge order in the input does not matter") {
  using E = AdjacencyGraph::Edge;
  const AdjacencyGraph a({"a", "b", "c"}, {E{0, 1, 1.0}, E{1, 2, 2.0}});
  const AdjacencyGraph b({"a", "b", "c"}, {E{2, 1, 2.0}, E{1, 0, 1.0}});
  CHECK(a.edges() == b.edges());
}
