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

#include "mapens/crosswalk.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include <boost/geometry/index/rtree.hpp>

#include "mapens/errors.h"

namespace mapens {
namespace {

namespace bgi = boost::geometry::index;

// Overlap fractions closer than this count as tied.
constexpr double kFractionSlack = 1e-12;

}  // namespace

std::vector<std::string> Crosswalk::labels() const {
  std::set<std::string> s;
  for (const auto& [unit, label] : assignment) s.insert(label);
  return {s.begin(), s.end()};
}

Crosswalk build_crosswalk(std::span<const SpatialUnit> units,
                          std::span<const HistoricalDistrict> districts) {
  if (units.empty()) throw RegionError("crosswalk: no spatial units");
  if (districts.empty()) throw RegionError("crosswalk: no historical districts");

  // Districts visited in label order so that ties go to the smallest label.
  std::vector<std::size_t> order(districts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return districts[a].label < districts[b].label;
  });

  using Entry = std::pair<Box, std::size_t>;
  std::vector<Entry> boxes;
  MultiPolygon covered;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& d = districts[order[rank]];
    boxes.emplace_back(bg::return_envelope<Box>(d.geometry), rank);
    covered = union_all(covered, d.geometry);
  }
  bgi::rtree<Entry, bgi::quadratic<16>> index(boxes.begin(), boxes.end());

  Crosswalk cw;
  cw.rows.reserve(units.size());
  for (const auto& unit : units) {
    const double unit_area = area(unit.geometry);
    if (!(unit_area > 0.0)) {
      throw GeometryError("unit '" + unit.id + "' has zero area");
    }
    CrosswalkRow row{unit.id, {}, 0.0, 0.0};
    row.union_fraction =
        std::clamp(intersection_area(unit.geometry, covered) / unit_area, 0.0, 1.0);

    std::vector<Entry> hits;
    index.query(bgi::intersects(bg::return_envelope<Box>(unit.geometry)),
                std::back_inserter(hits));
    std::sort(hits.begin(), hits.end(),
              [](const Entry& a, const Entry& b) { return a.second < b.second; });
    std::string best_label;
    for (const auto& [box, rank] : hits) {
      const auto& d = districts[order[rank]];
      const double f = std::clamp(
          intersection_area(unit.geometry, d.geometry) / unit_area, 0.0, 1.0);
      if (f <= 0.0) continue;
      cw.overlap_fractions[{unit.id, d.label}] = f;
      if (f > row.best_fraction + kFractionSlack) {
        row.best_fraction = f;
        best_label = d.label;
      }
    }

    if (row.union_fraction >= kCrosswalkMinCoverage - kFractionSlack &&
        !best_label.empty()) {
      row.label = best_label;
      cw.assignment[unit.id] = best_label;
    } else {
      cw.excluded.insert(unit.id);
    }
    cw.rows.push_back(std::move(row));
  }
  if (cw.assignment.empty()) {
    throw RegionError("crosswalk: every unit falls below 50% district coverage");
  }
  return cw;
}

Crosswalk drop_empty_districts(const Crosswalk& crosswalk,
                               std::span<const SpatialUnit> units) {
  std::unordered_map<std::string, std::int64_t> unit_total;
  for (const auto& u : units) unit_total[u.id] = u.total;

  std::map<std::string, std::int64_t> district_total;
  for (const auto& [id, label] : crosswalk.assignment) {
    auto it = unit_total.find(id);
    if (it == unit_total.end()) {
      throw ContractError("crosswalk references unknown unit '" + id + "'");
    }
    district_total[label] += it->second;
  }
  std::set<std::string> empty;
  for (const auto& [label, total] : district_total) {
    if (total == 0) empty.insert(label);
  }
  if (empty.empty()) return crosswalk;

  Crosswalk out = crosswalk;
  for (auto it = out.assignment.begin(); it != out.assignment.end();) {
    if (empty.count(it->second)) {
      out.excluded.insert(it->first);
      it = out.assignment.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& row : out.rows) {
    if (empty.count(row.label)) row.label.clear();
  }
  return out;
}

void write_crosswalk_csv(std::ostream& out, const Crosswalk& crosswalk) {
  out << "unit_id,assigned_label_or_EXCLUDED,union_fraction,best_fraction\n";
  char buf[64];
  for (const auto& row : crosswalk.rows) {
    out << row.unit_id << ',' << (row.label.empty() ? "EXCLUDED" : row.label);
    std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", row.union_fraction,
                  row.best_fraction);
    out << buf;
  }
}

}  // namespace mapens
