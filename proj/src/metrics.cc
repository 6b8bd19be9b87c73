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

#include "mapens/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mapens/errors.h"

namespace mapens {

const char* to_string(Weighting w) {
  return w == Weighting::kLiteralPaper ? "literal_paper" : "population_weighted";
}

Weighting parse_weighting(const std::string& s) {
  if (s == "population_weighted") return Weighting::kPopulationWeighted;
  if (s == "literal_paper") return Weighting::kLiteralPaper;
  throw ContractError("unknown weighting '" + s + "'");
}

double district_entropy(std::span<const double> proportions) {
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ContractError("proportion outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ContractError("proportions do not sum to 1");
  }
  double h = 0.0;
  for (double p : proportions) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double count_entropy(std::span<const std::int64_t> counts) {
  const std::int64_t n =
      std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (n <= 0) return 0.0;
  const double total = static_cast<double>(n);
  double h = 0.0;
  for (auto c : counts) {
    if (c <= 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

EntropyResult region_entropy(const DistrictMap& map, Weighting weighting) {
  const std::size_t z = map.district_count();
  const std::size_t k = map.group_count();
  std::vector<std::int64_t> pooled(k, 0);
  for (std::size_t i = 0; i < z; ++i) {
    const auto t = map.tally(static_cast<int>(i));
    for (std::size_t j = 0; j < k; ++j) pooled[j] += t[j];
  }
  EntropyResult r;
  r.h_hat = count_entropy(pooled);
  if (!(r.h_hat > 0.0)) {
    throw DegenerateRegionError(
        "region-wide entropy is zero (a single group); the index is undefined");
  }
  const double n = static_cast<double>(
      std::accumulate(pooled.begin(), pooled.end(), std::int64_t{0}));

  r.h_per_district.resize(z);
  double weighted = 0.0;
  // Sum of n_i * (h_hat - h_i) / h_hat. Written this way a district whose mix
  // equals the region's contributes exactly 0 and a single-group district
  // exactly n_i, so the two extremes come out as 0 and 1 without rounding.
  double gap = 0.0;
  for (std::size_t i = 0; i < z; ++i) {
    const double ni = static_cast<double>(map.total(static_cast<int>(i)));
    const double hi = count_entropy(map.tally(static_cast<int>(i)));
    r.h_per_district[i] = hi;
    weighted += ni * hi;
    gap += ni * ((r.h_hat - hi) / r.h_hat);
  }
  r.h_bar = weighted / n;
  if (weighting == Weighting::kLiteralPaper) {
    r.h_bar /= static_cast<double>(z);
    r.index = (r.h_hat - r.h_bar) / r.h_hat;
  } else {
    r.index = gap / n;
  }
  r.index = std::clamp(r.index, 0.0, 1.0);
  return r;
}

double polsby_popper(double area, double perimeter) {
  if (!(perimeter > 0.0)) {
    throw GeometryError("Polsby-Popper of a shape with zero perimeter");
  }
  return 4.0 * std::numbers::pi * area / (perimeter * perimeter);
}

double polsby_popper(const MultiPolygon& shape) {
  return polsby_popper(mapens::area(shape), mapens::perimeter(shape));
}

std::vector<double> district_polsby_popper(const DistrictMap& map,
                                           const AdjacencyGraph& graph,
                                           std::span<const UnitShape> shapes) {
  if (shapes.size() != map.node_count()) {
    throw ContractError("one UnitShape per chain node is required");
  }
  const std::size_t z = map.district_count();
  std::vector<double> area(z, 0.0);
  std::vector<double> boundary(z, 0.0);
  for (std::size_t v = 0; v < shapes.size(); ++v) {
    const int d = map.district_of(static_cast<int>(v));
    area[d] += shapes[v].area;
    boundary[d] += shapes[v].perimeter;
  }
  for (const auto& e : graph.edges()) {
    const int d = map.district_of(e.u);
    if (d == map.district_of(e.v)) boundary[d] -= 2.0 * e.shared_perimeter;
  }
  std::vector<double> pp;
  for (std::size_t d = 0; d < z; ++d) {
    if (map.district_size(static_cast<int>(d)) == 0) continue;
    pp.push_back(polsby_popper(area[d], boundary[d]));
  }
  return pp;
}

CompactnessStats compactness_audit(const DistrictMap& map,
                                   const AdjacencyGraph& graph,
                                   std::span<const UnitShape> shapes) {
  const std::vector<double> pp = district_polsby_popper(map, graph, shapes);
  if (pp.empty()) throw GeometryError("compactness audit of an empty map");
  CompactnessStats s;
  s.min_pp = *std::min_element(pp.begin(), pp.end());
  s.mean_pp = std::accumulate(pp.begin(), pp.end(), 0.0) /
              static_cast<double>(pp.size());
  return s;
}

std::vector<MultiPolygon> dissolve_districts(
    const DistrictMap& map, std::span<const MultiPolygon> node_geometries) {
  if (node_geometries.size() != map.node_count()) {
    throw ContractError("one geometry per chain node is required");
  }
  std::vector<MultiPolygon> out(map.district_count());
  for (std::size_t v = 0; v < node_geometries.size(); ++v) {
    auto& acc = out[map.district_of(static_cast<int>(v))];
    acc = union_all(acc, node_geometries[v]);
  }
  for (std::size_t d = 0; d < out.size(); ++d) {
    std::string reason;
    if (!out[d].empty() && !bg::is_valid(out[d], reason)) {
      throw GeometryError("dissolve of district '" + map.labels()[d] +
                          "' failed: " + reason);
    }
  }
  return out;
}

}  // namespace mapens
