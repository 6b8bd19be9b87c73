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

#ifndef MAPENS_SYNTH_H_
#define MAPENS_SYNTH_H_

#include <cstdint>
#include <vector>

#include "mapens/region.h"

namespace mapens {

struct SynthParams {
  int rows = 10;
  int cols = 10;
  int districts = 4;
  // 0 gives every unit the region-wide mix, 1 puts each district's units
  // entirely in that district's dominant group.
  double segregation = 0.8;
  std::uint64_t seed = 1;
  GroupSchema schema = GroupSchema::census_default();
  int min_unit_population = 40;
  int max_unit_population = 160;

  void check() const;  // ArgumentError-style std::invalid_argument
};

struct SynthRegion {
  std::vector<SpatialUnit> units;
  std::vector<HistoricalDistrict> districts;
  std::vector<int> planted;  // unit index -> district index
};

// Grid of unit squares with planted districts laid out as column bands of
// alternating 2:3 widths (filled column-major, so bands may step). District
// d's dominant group is d mod k. Unit populations are uniform in
// [min_unit_population, max_unit_population]; each group count is the
// rounded share (1 - s) / k + s * [group is dominant].
SynthRegion make_synthetic_region(const SynthParams& params);

}  // namespace mapens

#endif  // MAPENS_SYNTH_H_
