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

#ifndef MAPENS_METRICS_H_
#define MAPENS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "mapens/adjacency.h"
#include "mapens/geometry.h"
#include "mapens/partition.h"

namespace mapens {

// How the within-district entropies are averaged. kLiteralPaper adds an
// extra 1/z factor, under which a perfectly even region scores 1 - 1/z
// instead of 0; it exists for comparison only.
enum class Weighting { kPopulationWeighted, kLiteralPaper };

const char* to_string(Weighting w);
Weighting parse_weighting(const std::string& s);

struct EntropyResult {
  std::vector<double> h_per_district;  // nats, indexed like map.labels()
  double h_hat = 0.0;                  // entropy of the pooled region
  double h_bar = 0.0;                  // averaged district entropy
  double index = 0.0;                  // (h_hat - h_bar) / h_hat, in [0, 1]
};

// -sum p ln p with 0 ln 0 = 0. Throws ContractError unless the proportions
// lie in [0, 1] and sum to 1 within 1e-9.
double district_entropy(std::span<const double> proportions);

// Same quantity from raw counts; an all-zero row has entropy 0.
double count_entropy(std::span<const std::int64_t> counts);

// Throws DegenerateRegionError when the pooled region holds a single group.
EntropyResult region_entropy(const DistrictMap& map,
                             Weighting weighting = Weighting::kPopulationWeighted);

// 4*pi*A / P^2.
double polsby_popper(double area, double perimeter);
double polsby_popper(const MultiPolygon& shape);

// Area and boundary length of each chain node.
struct UnitShape {
  double area = 0.0;
  double perimeter = 0.0;
};

struct CompactnessStats {
  double min_pp = 0.0;
  double mean_pp = 0.0;
};

// Polsby-Popper of each dissolved district. District area is the sum of its
// units' areas; its boundary is the units' total perimeter minus twice the
// boundary shared between members, which is what dissolving the tiles
// leaves behind. Empty districts are skipped.
std::vector<double> district_polsby_popper(const DistrictMap& map,
                                           const AdjacencyGraph& graph,
                                           std::span<const UnitShape> shapes);

CompactnessStats compactness_audit(const DistrictMap& map,
                                   const AdjacencyGraph& graph,
                                   std::span<const UnitShape> shapes);

// The end state may not be less compact than the seed at its worst district.
inline bool compactness_passes(const CompactnessStats& seed,
                               const CompactnessStats& end) {
  return end.min_pp >= seed.min_pp;
}

// Explicit polygon union of each district's member geometries.
std::vector<MultiPolygon> dissolve_districts(
    const DistrictMap& map, std::span<const MultiPolygon> node_geometries);

}  // namespace mapens

#endif  // MAPENS_METRICS_H_
