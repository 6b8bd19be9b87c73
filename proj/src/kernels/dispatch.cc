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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "mapens/kernels.h"

namespace mapens::kernels {
namespace {

struct Table {
  double (*sum)(std::span<const double>);
  double (*sum_sq_dev)(std::span<const double>, double);
};

constexpr Table kScalar{&ref::sum, &ref::sum_sq_dev};
#if defined(MAPENS_HAVE_AVX2)
constexpr Table kAvx2{&avx2::sum, &avx2::sum_sq_dev};
#endif
#if defined(MAPENS_HAVE_NEON)
constexpr Table kNeon{&neon::sum, &neon::sum_sq_dev};
#endif

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(MAPENS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(MAPENS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table_for(Isa isa) {
  switch (isa) {
#if defined(MAPENS_HAVE_AVX2)
    case Isa::kAvx2:
      return kAvx2;
#endif
#if defined(MAPENS_HAVE_NEON)
    case Isa::kNeon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

Isa initial_isa() {
  const char* env = std::getenv("MAPENS_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

Isa detected_isa() {
  if (cpu_has(Isa::kAvx2)) return Isa::kAvx2;
  if (cpu_has(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
  if (!cpu_has(isa)) return false;
  active().store(isa, std::memory_order_relaxed);
  return true;
}

double sum(std::span<const double> x) { return table_for(active_isa()).sum(x); }

double sum_sq_dev(std::span<const double> x, double center) {
  return table_for(active_isa()).sum_sq_dev(x, center);
}

}  // namespace mapens::kernels
