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

#include "mapens/placebo.h"

#include <mutex>
#include <optional>

#include "mapens/errors.h"
#include "parallel.h"

namespace mapens {
namespace {

// Keeps shuffle streams apart from chain streams drawn off the same base.
constexpr std::uint64_t kShuffleSalt = 0x5ca1ab1e0ddba11ULL;

}  // namespace

std::vector<SpatialUnit> shuffle_within_groups(
    std::span<const SpatialUnit> units, std::uint64_t seed) {
  std::vector<SpatialUnit> out(units.begin(), units.end());
  if (out.empty()) throw ContractError("shuffle of an empty unit list");
  const std::size_t k = out.front().counts.size();
  Rng rng(seed);
  std::vector<std::int64_t> column(out.size());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < out.size(); ++i) column[i] = out[i].counts.at(j);
    for (std::size_t i = column.size() - 1; i > 0; --i) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, i)(rng);
      std::swap(column[i], column[pick]);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].counts[j] = column[i];
  }
  for (auto& u : out) {
    u.recompute_total();
    u.reported_total.reset();
  }
  return out;
}

double PlaceboReplicate::baseline_quantile() const {
  if (trace.values.empty()) return 0.5;
  std::size_t below = 0;
  std::size_t equal = 0;
  for (double v : trace.values) {
    if (v < baseline) ++below;
    if (v == baseline) ++equal;
  }
  return (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
         static_cast<double>(trace.values.size());
}

bool PlaceboReplicate::baseline_inside(double central_mass) const {
  const double tail = (1.0 - central_mass) / 2.0;
  const double q = baseline_quantile();
  return q >= tail && q <= 1.0 - tail;
}

std::vector<PlaceboReplicate> run_placebo(
    std::span<const SpatialUnit> units, const Crosswalk& crosswalk,
    const AdjacencyGraph& graph, const ProposalConfig& proposal,
    const ValidatorConfig& validator, const ChainConfig& chain,
    const PlaceboOptions& options) {
  if (options.replicates < 0) throw ContractError("negative replicate count");
  const auto jobs = static_cast<std::size_t>(options.replicates);
  if (jobs == 0) return {};
  chain.check();

  std::vector<std::optional<PlaceboReplicate>> slots(jobs);
  std::mutex hook_mutex;
  internal::parallel_for(jobs, worker_count(jobs), [&](std::size_t r) {
    PlaceboReplicate rep;
    rep.replicate = static_cast<int>(r);
    rep.shuffle_seed =
        split_seed(chain.base_seed ^ kShuffleSalt, options.shared_shuffle ? 0 : r);
    const std::vector<SpatialUnit> shuffled =
        shuffle_within_groups(units, rep.shuffle_seed);
    const Crosswalk cw = drop_empty_districts(crosswalk, shuffled);
    const ChainRegion region = from_crosswalk(cw, graph, shuffled);
    rep.baseline = baseline_entropy(region.seed, chain.weighting);
    const ValidatorConfig anchored = validator.anchored_to(region.seed);
    rep.trace = run_chain(region.seed, region.graph, proposal, anchored, chain,
                          static_cast<int>(r))
                    .trace;
    if (options.on_replicate_done) {
      std::lock_guard<std::mutex> lock(hook_mutex);
      options.on_replicate_done(rep);
    }
    slots[r].emplace(std::move(rep));
  });
  std::vector<PlaceboReplicate> out;
  out.reserve(jobs);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace mapens
