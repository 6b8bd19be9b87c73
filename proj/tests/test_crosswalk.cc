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

#include <random>
#include <sstream>

#include "mapens/crosswalk.h"
#include "mapens/errors.h"
#include "mapens/partition.h"
#include "oracles.h"
#include "support.h"

using namespace mapens;
using Catch::Approx;

namespace {

SpatialUnit unit(const std::string& id, const MultiPolygon& g,
                 std::int64_t people = 10) {
  SpatialUnit u;
  u.id = id;
  u.geometry = g;
  u.counts = {people, 0};
  u.recompute_total();
  return u;
}

HistoricalDistrict district(const std::string& label, const MultiPolygon& g) {
  return {label, std::nullopt, g};
}

}  // namespace

TEST_CASE("unit inside one district takes its label") {
  const std::vector<SpatialUnit> units{unit("u", make_rectangle(1, 1, 2, 2))};
  const std::vector<HistoricalDistrict> ds{
      district("D7", make_rectangle(0, 0, 5, 5))};
  const auto cw = build_crosswalk(units, ds);
  CHECK(cw.assignment.at("u") == "D7");
  CHECK(cw.rows[0].union_fraction == Approx(1.0));
}

TEST_CASE("unit covered 40% is excluded") {
  const std::vector<SpatialUnit> units{
      unit("keep", make_rectangle(10, 10, 11, 11)),
      unit("part", make_rectangle(0, 0, 1, 1))};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(-1, -1, 0.4, 2)),
      district("B", make_rectangle(9, 9, 12, 12))};
  const auto cw = build_crosswalk(units, ds);
  CHECK(cw.excluded.count("part") == 1);
  CHECK(cw.assignment.count("part") == 0);
  CHECK(cw.rows[1].union_fraction == Approx(0.4));
  CHECK(cw.rows[1].label.empty());
}

TEST_CASE("largest single overlap wins: 0.30 vs 0.35") {
  const std::vector<SpatialUnit> units{unit("u", make_rectangle(0, 0, 1, 1))};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(0, 0, 0.30, 1)),
      district("B", make_rectangle(0.65, 0, 1.5, 1))};
  const auto cw = build_crosswalk(units, ds);
  REQUIRE(cw.assignment.count("u") == 1);
  CHECK(cw.assignment.at("u") == "B");
  CHECK(cw.rows[0].union_fraction == Approx(0.65));
  CHECK(cw.rows[0].best_fraction == Approx(0.35));
  CHECK(cw.overlap_fractions.at({"u", "A"}) == Approx(0.30));
}

TEST_CASE("exact tie goes to the smaller label") {
  const std::vector<SpatialUnit> units{unit("u", make_rectangle(0, 0, 1, 1))};
  const std::vector<HistoricalDistrict> ds{
      district("Z", make_rectangle(0.5, 0, 1, 1)),
      district("M", make_rectangle(0, 0, 0.5, 1))};
  CHECK(build_crosswalk(units, ds).assignment.at("u") == "M");
}

TEST_CASE("no coverage at all is a region error") {
  const std::vector<SpatialUnit> units{unit("u", make_rectangle(0, 0, 1, 1))};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(5, 5, 6, 6))};
  CHECK_THROWS_AS(build_crosswalk(units, ds), RegionError);
}

TEST_CASE("crosswalk matches rasterized oracle on random layouts") {
  std::mt19937_64 rng(20240611);
  const int grids[] = {4, 5, 8, 10};
  int checked = 0;
  for (int layout = 0; layout < 20; ++layout) {
    const int n = grids[layout % 4];
    const double w = 1.0 / n;
    std::vector<SpatialUnit> units;
    std::vector<oracle::Rect> unit_rects;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const oracle::Rect rect{c * w, r * w, (c + 1) * w, (r + 1) * w};
        unit_rects.push_back(rect);
        units.push_back(unit("u" + std::to_string(r * n + c),
                             make_rectangle(rect.x0, rect.y0, rect.x1, rect.y1)));
      }
    }
    std::uniform_int_distribution<int> coord(-10, 110);
    std::vector<HistoricalDistrict> ds;
    std::vector<oracle::Rect> d_rects;
    std::vector<std::string> labels;
    for (int d = 0; d < 6; ++d) {
      int a = coord(rng), b = coord(rng), c = coord(rng), e = coord(rng);
      if (a == b) ++b;
      if (c == e) ++e;
      const oracle::Rect rect{std::min(a, b) / 100.0, std::min(c, e) / 100.0,
                              std::max(a, b) / 100.0, std::max(c, e) / 100.0};
      d_rects.push_back(rect);
      labels.push_back("L" + std::to_string(d));
      ds.push_back(district(labels.back(),
                            make_rectangle(rect.x0, rect.y0, rect.x1, rect.y1)));
    }
    const auto expect = oracle::raster_crosswalk(unit_rects, d_rects, labels, 1e-3);
    Crosswalk cw;
    try {
      cw = build_crosswalk(units, ds);
    } catch (const RegionError&) {
      for (const auto& e : expect) CHECK(e.empty());
      continue;
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
      INFO("layout " << layout << " unit " << units[i].id);
      const auto it = cw.assignment.find(units[i].id);
      const std::string got = it == cw.assignment.end() ? "" : it->second;
      CHECK(got == expect[i]);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("empty districts are dropped") {
  std::vector<SpatialUnit> units{unit("a", make_rectangle(0, 0, 1, 1)),
                                 unit("b", make_rectangle(1, 0, 2, 1), 0),
                                 unit("c", make_rectangle(2, 0, 3, 1))};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(0, 0, 1, 1)),
      district("B", make_rectangle(1, 0, 2, 1)),
      district("C", make_rectangle(2, 0, 3, 1))};
  const auto cw = build_crosswalk(units, ds);
  const auto dropped = drop_empty_districts(cw, units);
  CHECK(dropped.labels() == std::vector<std::string>{"A", "C"});
  CHECK(dropped.excluded.count("b") == 1);

  units[1].counts = {3, 0};
  units[1].recompute_total();
  const auto kept = drop_empty_districts(cw, units);
  CHECK(kept.assignment == cw.assignment);
  CHECK(kept.excluded == cw.excluded);
}

TEST_CASE("all districts empty ends in a region error") {
  const std::vector<SpatialUnit> units{unit("a", make_rectangle(0, 0, 1, 1), 0),
                                       unit("b", make_rectangle(1, 0, 2, 1), 0)};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(0, 0, 1, 1)),
      district("B", make_rectangle(1, 0, 2, 1))};
  const auto cw = drop_empty_districts(build_crosswalk(units, ds), units);
  CHECK(cw.assignment.empty());
  CHECK_THROWS_AS(from_crosswalk(cw, build_adjacency(units), units), RegionError);
}

TEST_CASE("crosswalk CSV layout") {
  const std::vector<SpatialUnit> units{unit("a", make_rectangle(0, 0, 1, 1)),
                                       unit("b", make_rectangle(5, 5, 6, 6))};
  const std::vector<HistoricalDistrict> ds{
      district("A", make_rectangle(0, 0, 1, 1))};
  std::ostringstream out;
  write_crosswalk_csv(out, build_crosswalk(units, ds));
  CHECK(out.str() ==
        "unit_id,assigned_label_or_EXCLUDED,union_fraction,best_fraction\n"
        "a,A,1,1\n"
        "b,EXCLUDED,0,0\n");
}
