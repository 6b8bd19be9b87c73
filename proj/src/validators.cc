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

#include "mapens/validators.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mapens/errors.h"

namespace mapens {

void ValidatorConfig::check() const {
  if (min_population < 0) throw ContractError("min_population must be >= 0");
  if (!(std_lower_factor > 0.0 && std_lower_factor < 1.0 &&
        std_upper_factor > 1.0)) {
    throw ContractError("need 0 < std_lower_factor < 1 < std_upper_factor");
  }
  if (!(s0 > 0.0)) throw ContractError("validator s0 must be positive");
}

ValidatorConfig ValidatorConfig::anchored_to(const DistrictMap& seed) const {
  ValidatorConfig out = *this;
  out.s0 = district_population_std(seed.totals(), divisor);
  if (!(out.s0 > 0.0)) {
    throw RegionError(
        "seed map district populations are all equal; the spread bracket is "
        "empty");
  }
  out.check();
  return out;
}

// Two-pass in long double; z is small and the result feeds accept/reject
// decisions, so it stays on the scalar path.
double district_population_std(std::span<const std::int64_t> totals,
                               StdDivisor divisor) {
  const std::size_t z = totals.size();
  if (z < 2) return 0.0;
  long double mean = 0.0L;
  for (auto t : totals) mean += static_cast<long double>(t);
  mean /= static_cast<long double>(z);
  long double ss = 0.0L;
  for (auto t : totals) {
    const long double d = static_cast<long double>(t) - mean;
    ss += d * d;
  }
  const long double denom =
      divisor == StdDivisor::kSample ? static_cast<long double>(z - 1)
                                     : static_cast<long double>(z);
  return static_cast<double>(std::sqrt(ss / denom));
}

bool validate_lower_bound(const DistrictMap& map, const ValidatorConfig& cfg) {
  const auto& totals = map.totals();
  if (totals.empty()) return false;
  return *std::min_element(totals.begin(), totals.end()) >= cfg.min_population;
}

bool validate_std(const DistrictMap& map, const ValidatorConfig& cfg) {
  const double s = district_population_std(map.totals(), cfg.divisor);
  return s >= cfg.std_lower_factor * cfg.s0 && s <= cfg.std_upper_factor * cfg.s0;
}

bool validate(const DistrictMap& map, const ValidatorConfig& cfg) {
  return validate_lower_bound(map, cfg) && validate_std(map, cfg);
}

}  // namespace mapens
