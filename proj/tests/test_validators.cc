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

#include <cmath>

#include "mapens/errors.h"
#include "mapens/validators.h"
#include "support.h"

using namespace mapens;

namespace {

// One node per district, with the given totals.
DistrictMap totals_map(const std::vector<std::int64_t>& totals) {
  auto t = std::make_shared<UnitTable>();
  t->groups = 1;
  std::vector<std::string> labels;
  std::vector<int> assignment;
  for (std::size_t i = 0; i < totals.size(); ++i) {
    t->ids.push_back("n" + std::to_string(i));
    t->counts.push_back(totals[i]);
    labels.push_back("D" + std::to_string(i));
    assignment.push_back(static_cast<int>(i));
  }
  return DistrictMap(t, labels, assignment);
}

ValidatorConfig with_s0(double s0) {
  ValidatorConfig v;
  v.s0 = s0;
  return v;
}

}  // namespace

TEST_CASE("sample standard deviation") {
  const std::vector<std::int64_t> t{100, 200, 300};
  CHECK(district_population_std(t, StdDivisor::kSample) == Catch::Approx(100.0));
  CHECK(district_population_std(t, StdDivisor::kPopulation) ==
        Catch::Approx(std::sqrt(20000.0 / 3.0)));
}

TEST_CASE("lower bound") {
  const auto v = with_s0(1.0);
  CHECK_FALSE(validate_lower_bound(totals_map({0, 100, 200}), v));
  CHECK_FALSE(validate_lower_bound(totals_map({49, 100, 200}), v));
  CHECK(validate_lower_bound(totals_map({50, 100, 200}), v));
  auto zero = v;
  zero.min_population = 0;
  CHECK(validate_lower_bound(totals_map({1, 1}), zero));
}

TEST_CASE("std bracket: s = 0.8 s0 passes, s = 1.3 s0 fails") {
  // Totals 100, 200, 300 have sample std exactly 100.
  const auto m = totals_map({100, 200, 300});
  CHECK(validate_std(m, with_s0(125.0)));   // s = 0.8 s0
  CHECK_FALSE(validate_std(m, with_s0(100.0 / 1.3)));
  CHECK(validate_std(m, with_s0(100.0 / 0.75)));  // lower edge
  CHECK(validate_std(m, with_s0(100.0 / 1.25)));  // upper edge
  CHECK_FALSE(validate_std(m, with_s0(100.0 / 0.74)));
}

TEST_CASE("seed validates against itself") {
  const auto seed = totals_map({120, 340, 90, 410});
  const auto v = ValidatorConfig{}.anchored_to(seed);
  CHECK(v.s0 == Catch::Approx(district_population_std(seed.totals(),
                                                      StdDivisor::kSample)));
  CHECK(validate(seed, v));
}

TEST_CASE("both validators must pass") {
  const auto v = with_s0(100.0);
  CHECK_FALSE(validate(totals_map({100, 200, 300}), with_s0(10.0)));  // std only
  CHECK_FALSE(validate(totals_map({10, 110, 210}), v));                // bound only
  CHECK(validate(totals_map({100, 200, 300}), v));
}

TEST_CASE("uniform seed cannot anchor the spread") {
  CHECK_THROWS_AS(ValidatorConfig{}.anchored_to(totals_map({100, 100})),
                  RegionError);
}
