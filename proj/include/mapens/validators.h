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

#ifndef MAPENS_VALIDATORS_H_
#define MAPENS_VALIDATORS_H_

#include <cstdint>
#include <span>

#include "mapens/partition.h"

namespace mapens {

enum class StdDivisor { kSample, kPopulation };

struct ValidatorConfig {
  std::int64_t min_population = 50;
  double std_lower_factor = 0.75;
  double std_upper_factor = 1.25;
  StdDivisor divisor = StdDivisor::kSample;
  double s0 = 0.0;  // spread of the seed map, fixed at chain start

  void check() const;  // requires s0 > 0
  // Copy of this config with s0 taken from `seed`. Throws RegionError when
  // the seed's district populations have no spread.
  ValidatorConfig anchored_to(const DistrictMap& seed) const;
};

// Standard deviation of district totals with the configured divisor.
double district_population_std(std::span<const std::int64_t> totals,
                               StdDivisor divisor);

bool validate_lower_bound(const DistrictMap& map, const ValidatorConfig& cfg);
bool validate_std(const DistrictMap& map, const ValidatorConfig& cfg);
bool validate(const DistrictMap& map, const ValidatorConfig& cfg);

}  // namespace mapens

#endif  // MAPENS_VALIDATORS_H_
