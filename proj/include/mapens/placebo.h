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

#ifndef MAPENS_PLACEBO_H_
#define MAPENS_PLACEBO_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mapens/adjacency.h"
#include "mapens/chain.h"
#include "mapens/crosswalk.h"
#include "mapens/region.h"

namespace mapens {

// Permutes each group's per-unit counts across units independently
// (Fisher-Yates), leaving ids and geometry alone. Group totals over the
// region are preserved exactly; unit totals are recomputed.
std::vector<SpatialUnit> shuffle_within_groups(
    std::span<const SpatialUnit> units, std::uint64_t seed);

struct PlaceboReplicate {
  int replicate = 0;
  std::uint64_t shuffle_seed = 0;
  double baseline = 0.0;
  EntropyTrace trace;

  // Mid-rank of the baseline within the replicate's own trace: share of
  // values below it plus half the share equal to it.
  double baseline_quantile() const;
  bool baseline_inside(double central_mass = 0.95) const;
};

struct PlaceboOptions {
  int replicates = 0;
  // One shuffle shared by every replicate instead of a fresh one each.
  bool shared_shuffle = false;
  std::function<void(const PlaceboReplicate&)> on_replicate_done;
};

// Per replicate: shuffle, rebuild the seed map on the shuffled counts (empty
// districts dropped again), take its entropy as that replicate's baseline,
// re-anchor the validators and run one chain. Replicate r's chain is seeded
// with split_seed(base_seed, r), exactly like chain r of an ensemble.
// `crosswalk` and `graph` come from the unshuffled ingest.
std::vector<PlaceboReplicate> run_placebo(
    std::span<const SpatialUnit> units, const Crosswalk& crosswalk,
    const AdjacencyGraph& graph, const ProposalConfig& proposal,
    const ValidatorConfig& validator, const ChainConfig& chain,
    const PlaceboOptions& options);

}  // namespace mapens

#endif  // MAPENS_PLACEBO_H_
