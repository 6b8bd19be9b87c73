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

#ifndef MAPENS_REGION_H_
#define MAPENS_REGION_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mapens/geometry.h"

namespace mapens {

// Ordered population group labels. Counts are always stored in this order.
struct GroupSchema {
  std::vector<std::string> labels;

  static GroupSchema census_default();  // k = 8, Hispanic as its own group
  std::size_t size() const { return labels.size(); }
  void check() const;
};

// One census block group.
struct SpatialUnit {
  std::string id;
  MultiPolygon geometry;
  std::vector<std::int64_t> counts;  // one per schema label
  std::int64_t total = 0;            // sum of counts
  // The file's own `total` property. Recorded for audit only; it may differ
  // from `total` when groups overlap (e.g. Hispanic origin vs race).
  std::optional<std::int64_t> reported_total;

  void recompute_total();
};

enum class Grade { A, B, C, D };

struct HistoricalDistrict {
  std::string label;
  std::optional<Grade> grade;  // metadata only
  MultiPolygon geometry;
};

std::vector<SpatialUnit> read_units_geojson(const std::filesystem::path& path,
                                            const GroupSchema& schema);
std::vector<HistoricalDistrict> read_districts_geojson(
    const std::filesystem::path& path);

// Writers emit the same schema the readers accept. `meta` is stored as a
// "_meta" member of the FeatureCollection when non-null.
void write_units_geojson(const std::filesystem::path& path,
                         const std::vector<SpatialUnit>& units,
                         const GroupSchema& schema,
                         const nlohmann::json& meta = nullptr);
void write_districts_geojson(const std::filesystem::path& path,
                             const std::vector<HistoricalDistrict>& districts,
                             const nlohmann::json& meta = nullptr);

nlohmann::json geometry_to_geojson(const MultiPolygon& g);
// Accepts Polygon and MultiPolygon geometry objects; `what` names the
// feature in error messages.
MultiPolygon geometry_from_geojson(const nlohmann::json& g,
                                   const std::string& what);

}  // namespace mapens

#endif  // MAPENS_REGION_H_
