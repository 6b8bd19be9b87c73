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

#ifndef MAPENS_CROSSWALK_H_
#define MAPENS_CROSSWALK_H_

#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mapens/region.h"

namespace mapens {

// Minimum share of a unit's area that must fall inside the union of all
// historical districts for the unit to be kept.
inline constexpr double kCrosswalkMinCoverage = 0.5;

// Per-unit audit line, in input unit order.
struct CrosswalkRow {
  std::string unit_id;
  std::string label;  // empty when excluded
  double union_fraction = 0.0;
  double best_fraction = 0.0;
};

struct Crosswalk {
  std::map<std::string, std::string> assignment;  // unit id -> district label
  std::set<std::string> excluded;
  // Only nonzero overlaps are recorded.
  std::map<std::pair<std::string, std::string>, double> overlap_fractions;
  std::vector<CrosswalkRow> rows;

  // Distinct assigned labels, sorted.
  std::vector<std::string> labels() const;
};

// Units whose union coverage is below 0.5 are excluded; the rest go to the
// district with the largest single overlap, ties to the smallest label.
// Throws GeometryError for a zero-area unit and RegionError when every unit
// ends up excluded.
Crosswalk build_crosswalk(std::span<const SpatialUnit> units,
                          std::span<const HistoricalDistrict> districts);

// Removes districts whose assigned population is zero; their units move to
// `excluded`.
Crosswalk drop_empty_districts(const Crosswalk& crosswalk,
                               std::span<const SpatialUnit> units);

// unit_id,assigned_label_or_EXCLUDED,union_fraction,best_fraction
void write_crosswalk_csv(std::ostream& out, const Crosswalk& crosswalk);

}  // namespace mapens

#endif  // MAPENS_CROSSWALK_H_
