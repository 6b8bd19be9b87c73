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

#ifndef MAPENS_KERNELS_H_
#define MAPENS_KERNELS_H_

#include <span>
#include <string_view>

// Reduction kernels behind the trace statistics. Every kernel has a scalar
// reference in `ref` and, where the target supports it, an AVX2 or NEON
// variant. The dispatched entry points pick a variant once at startup;
// MAPENS_SIMD=scalar in the environment forces the reference path.
namespace mapens::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Best variant this build and CPU can run.
Isa detected_isa();
Isa active_isa();
// Overrides dispatch (tests). Returns false if `isa` is unavailable.
bool set_active_isa(Isa isa);

double sum(std::span<const double> x);
// sum (x_i - center)^2
double sum_sq_dev(std::span<const double> x, double center);

namespace ref {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
}  // namespace ref

#if defined(MAPENS_HAVE_AVX2)
namespace avx2 {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
}  // namespace avx2
#endif

#if defined(MAPENS_HAVE_NEON)
namespace neon {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
}  // namespace neon
#endif

}  // namespace mapens::kernels

#endif  // MAPENS_KERNELS_H_
