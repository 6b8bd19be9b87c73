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

#include "mapens/synth.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace mapens {

void SynthParams::check() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid must be non-empty");
  if (districts < 2) throw std::invalid_argument("need at least 2 districts");
  if (static_cast<long>(rows) * cols < districts) {
    throw std::invalid_argument("more districts than grid cells");
  }
  if (!(segregation >= 0.0 && segregation <= 1.0)) {
    throw std::invalid_argument("segregation level must lie in [0, 1]");
  }
  if (min_unit_population < 0 || max_unit_population < min_unit_population) {
    throw std::invalid_argument("bad unit population range");
  }
  schema.check();
}

SynthRegion make_synthetic_region(const SynthParams& params) {
  params.check();
  const int n = params.rows * params.cols;
  const int z = params.districts;
  const std::size_t k = params.schema.size();

  // Cumulative 2:3:2:3... weights cut the column-major order into bands.
  std::vector<int> cut(z + 1, 0);
  {
    double total_w = 0.0;
    for (int d = 0; d < z; ++d) total_w += 2 + d % 2;
    double acc = 0.0;
    for (int d = 0; d < z; ++d) {
      acc += 2 + d % 2;
      cut[d + 1] = static_cast<int>(std::lround(n * acc / total_w));
    }
    for (int d = 1; d <= z; ++d) cut[d] = std::max(cut[d], cut[d - 1] + 1);
    cut[z] = n;
  }

  SynthRegion out;
  out.planted.assign(n, 0);
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> pop(params.min_unit_population,
                                         params.max_unit_population);
  const int width = params.rows * params.cols >= 10000 ? 3 : 2;
  std::vector<MultiPolygon> district_shapes(z);

  for (int c = 0; c < params.cols; ++c) {
    for (int r = 0; r < params.rows; ++r) {
      const int order = c * params.rows + r;
      int d = 0;
      while (order >= cut[d + 1]) ++d;
      const int index = r * params.cols + c;
      out.planted[index] = d;
    }
  }

  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) {
      const int index = r * params.cols + c;
      const int d = out.planted[index];
      SpatialUnit u;
      char id[32];
      std::snprintf(id, sizeof id, "U%0*d_%0*d", width, r, width, c);
      u.id = id;
      u.geometry = make_rectangle(c, r, c + 1, r + 1);
      const int people = pop(rng);
      const std::size_t dominant = static_cast<std::size_t>(d) % k;
      for (std::size_t j = 0; j < k; ++j) {
        const double share = (1.0 - params.segregation) / static_cast<double>(k) +
                             (j == dominant ? params.segregation : 0.0);
        u.counts.push_back(std::llround(people * share));
      }
      u.recompute_total();
      u.reported_total = u.total;
      district_shapes[d] = union_all(district_shapes[d], u.geometry);
      out.units.push_back(std::move(u));
    }
  }

  static constexpr Grade kGrades[] = {Grade::A, Grade::B, Grade::C, Grade::D};
  for (int d = 0; d < z; ++d) {
    char label[32];
    std::snprintf(label, sizeof label, "D-%02d", d + 1);
    out.districts.push_back({label, kGrades[d % 4], district_shapes[d]});
  }
  return out;
}

}  // namespace mapens
