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

#include <random>
#include <vector>

#include "mapens/kernels.h"

using namespace mapens;

namespace {

struct IsaGuard {
  kernels::Isa saved = kernels::active_isa();
  ~IsaGuard() { kernels::set_active_isa(saved); }
};

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 5.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void check_variant(double (*sum)(std::span<const double>),
                   double (*ssd)(std::span<const double>, double)) {
  for (std::size_t n = 0; n < 70; ++n) {
    const auto v = random_values(n, n + 1);
    const double c = n ? kernels::ref::sum(v) / n : 0.0;
    CHECK(sum(v) == Catch::Approx(kernels::ref::sum(v)).epsilon(1e-12).margin(1e-12));
    CHECK(ssd(v, c) ==
          Catch::Approx(kernels::ref::sum_sq_dev(v, c)).epsilon(1e-12).margin(1e-12));
  }
  const auto big = random_values(180000, 7);
  CHECK(sum(big) == Catch::Approx(kernels::ref::sum(big)).epsilon(1e-12));
  CHECK(ssd(big, 1.0) ==
        Catch::Approx(kernels::ref::sum_sq_dev(big, 1.0)).epsilon(1e-12));
}

}  // namespace

TEST_CASE("scalar reference values") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(kernels::ref::sum(v) == 10.0);
  CHECK(kernels::ref::sum_sq_dev(v, 2.5) == 5.0);
  CHECK(kernels::ref::sum({}) == 0.0);
}

TEST_CASE("scalar dispatch is always available") {
  IsaGuard guard;
  REQUIRE(kernels::set_active_isa(kernels::Isa::kScalar));
  CHECK(kernels::active_isa() == kernels::Isa::kScalar);
  const auto v = random_values(33, 1);
  CHECK(kernels::sum(v) == kernels::ref::sum(v));
  CHECK(kernels::isa_name(kernels::Isa::kScalar) == "scalar");
}

#if defined(MAPENS_HAVE_AVX2)
TEST_CASE("AVX2 kernels match the scalar reference") {
  if (kernels::detected_isa() != kernels::Isa::kAvx2) SKIP("CPU lacks AVX2");
  check_variant(kernels::avx2::sum, kernels::avx2::sum_sq_dev);
  IsaGuard guard;
  REQUIRE(kernels::set_active_isa(kernels::Isa::kAvx2));
  check_variant(kernels::sum, kernels::sum_sq_dev);
}
#endif

#if defined(MAPENS_HAVE_NEON)
TEST_CASE("NEON kernels match the scalar reference") {
  check_variant(kernels::neon::sum, kernels::neon::sum_sq_dev);
}
#endif

TEST_CASE("unavailable variants are refused") {
  IsaGuard guard;
#if !defined(MAPENS_HAVE_NEON)
  CHECK_FALSE(kernels::set_active_isa(kernels::Isa::kNeon));
#endif
#if !defined(MAPENS_HAVE_AVX2)
  CHECK_FALSE(kernels::set_active_isa(kernels::Isa::kAvx2));
#endif
  CHECK(kernels::set_active_isa(kernels::Isa::kScalar));
}
