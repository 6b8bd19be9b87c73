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

#ifndef MAPENS_ERRORS_H_
#define MAPENS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mapens {

// Invalid or unrepairable polygon input. The message names the feature id.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A region that cannot seed a chain (no usable districts, z < 2, ...).
class RegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Region-wide entropy is zero, so the normalized index is undefined.
class DegenerateRegionError : public RegionError {
 public:
  using RegionError::RegionError;
};

// Statistic needs a positive variance and got none.
class DegenerateVarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A chain rejected too many proposals in a row.
class StuckChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input files or configuration.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mapens

#endif  // MAPENS_ERRORS_H_
