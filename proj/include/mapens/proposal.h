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

#ifndef MAPENS_PROPOSAL_H_
#define MAPENS_PROPOSAL_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mapens/adjacency.h"
#include "mapens/partition.h"

namespace mapens {

using Rng = std::mt19937_64;

struct ProposalConfig {
  int max_chunk_size = 5;
  bool enforce_contiguity = true;
  // Redraws allowed per sub-flip before it is skipped.
  int contiguity_attempts = 20;

  void check() const;
};

// What one sub-flip did; filled only when the caller asks for it.
struct SubFlip {
  int source = -1;
  int target = -1;
  int seed_node = -1;
  std::vector<int> chunk;  // empty when skipped
  int attempts = 0;
};

struct ProposalLog {
  int requested = 0;  // r
  std::vector<SubFlip> flips;
};

// Chunk-flip proposal. Draws r uniformly from 1..|district edges|, then r
// times: picks a district edge and a direction, grows a chunk from a source
// node on that edge by randomized breadth-first search inside the source
// district (size uniform in 1..max_chunk_size) and flips it to the target.
// The returned map's step is map.step() + 1 even if every sub-flip was
// skipped.
DistrictMap propose(const DistrictMap& map, const AdjacencyGraph& graph,
                    const ProposalConfig& cfg, Rng& rng,
                    ProposalLog* log = nullptr);

// True iff removing `chunk` does not split its source district into more
// connected pieces than it had before. For a connected district this is the
// usual "remainder is connected" test; removing the whole district counts
// as connected.
bool source_is_connected_after_removal(const DistrictMap& map,
                                       const AdjacencyGraph& graph,
                                       std::span<const int> chunk);

// Number of connected components of one district's induced subgraph.
int district_components(const DistrictMap& map, const AdjacencyGraph& graph,
                        int district);

}  // namespace mapens

#endif  // MAPENS_PROPOSAL_H_
