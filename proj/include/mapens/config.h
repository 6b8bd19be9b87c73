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

#ifndef MAPENS_CONFIG_H_
#define MAPENS_CONFIG_H_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "mapens/chain.h"
#include "mapens/proposal.h"
#include "mapens/region.h"
#include "mapens/validators.h"

namespace mapens {

// Flat key/value configuration. Grammar, one entry per line:
//
//   line    := blank | comment | entry
//   comment := '#' anything
//   entry   := key '=' value        (whitespace around both is trimmed)
//   key     := section '.' name     e.g. proposal.max_chunk_size
//
// Lists (metrics.groups) are comma separated. Booleans are true/false.
// Unknown keys and malformed values are errors.
struct EngineConfig {
  GroupSchema schema = GroupSchema::census_default();
  ProposalConfig proposal;
  ValidatorConfig validators;  // s0 is filled per region at run time
  ChainConfig chain;
  int placebo_replicates = 20;
  bool placebo_shared_shuffle = false;

  void set(const std::string& key, const std::string& value);
  void check() const;

  // Every key in a fixed order, `key = value` per line.
  std::string canonical() const;
  // FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;

  static std::vector<std::string> keys();
  static EngineConfig parse(std::istream& in);
  static EngineConfig load(const std::filesystem::path& path);
};

}  // namespace mapens

#endif  // MAPENS_CONFIG_H_
