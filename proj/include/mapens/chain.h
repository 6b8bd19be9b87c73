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

#ifndef MAPENS_CHAIN_H_
#define MAPENS_CHAIN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mapens/metrics.h"
#include "mapens/partition.h"
#include "mapens/proposal.h"
#include "mapens/validators.h"

namespace mapens {

struct ChainConfig {
  std::uint64_t steps = 10'000;
  double burn_in_fraction = 0.10;
  std::uint64_t thinning = 5;
  int n_chains = 100;
  std::uint64_t base_seed = 0;
  std::uint64_t max_consecutive_rejects = 10'000;
  Weighting weighting = Weighting::kPopulationWeighted;

  void check() const;
  std::uint64_t burn_in_steps() const;
  // floor((steps - burn_in_steps) / thinning)
  std::uint64_t retained_count() const;
  // True when step t (1-based) is recorded.
  bool is_retained_step(std::uint64_t t) const;
};

// SplitMix64 finalizer over (base, stream): distinct, decorrelated seeds per
// chain without sharing a generator.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

struct EntropyTrace {
  int chain_id = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> steps;
  std::vector<double> values;
  std::uint64_t accept_count = 0;
  std::uint64_t reject_count = 0;
  std::uint64_t accept_after_burn_in = 0;

  double acceptance_rate() const;
  bool operator==(const EntropyTrace&) const = default;
};

// Called for every retained state, in step order.
using RetainedObserver =
    std::function<void(int chain_id, std::uint64_t step, const DistrictMap&,
                       double index)>;

// Everything needed to continue a chain exactly where it stopped.
struct ChainSnapshot {
  EntropyTrace trace;
  std::uint64_t step = 0;
  std::uint64_t consecutive_rejects = 0;
  std::uint64_t lower_bound_failures = 0;
  std::uint64_t std_failures = 0;
  std::vector<int> assignment;
  std::string rng_state;

  nlohmann::json to_json() const;
  static ChainSnapshot from_json(const nlohmann::json& j);
};

// One Markov chain. Each step proposes a map; a valid proposal becomes the
// current state and an invalid one leaves it in place. Either way the step
// counter advances.
class ChainRunner {
 public:
  // `validator` must already be anchored to the seed; the seed itself must
  // validate (RegionError otherwise). `graph` must outlive the runner.
  ChainRunner(const AdjacencyGraph& graph, DistrictMap seed,
              ProposalConfig proposal, ValidatorConfig validator,
              ChainConfig chain, int chain_id);
  ChainRunner(const AdjacencyGraph& graph, const DistrictMap& seed,
              ProposalConfig proposal, ValidatorConfig validator,
              ChainConfig chain, const ChainSnapshot& resume_from);

  // Runs up to `n` more steps (stops at the configured length). Throws
  // StuckChainError after max_consecutive_rejects rejections in a row.
  void advance(std::uint64_t n, const RetainedObserver& observer = {});
  void run_to_end(const RetainedObserver& observer = {});

  bool done() const { return step_ >= chain_.steps; }
  std::uint64_t step() const { return step_; }
  const DistrictMap& current() const { return current_; }
  const EntropyTrace& trace() const { return trace_; }

  ChainSnapshot snapshot() const;

  // Final checks once done(): throws StuckChainError if nothing was accepted
  // after burn-in.
  EntropyTrace finish() const;

 private:
  std::string stuck_message(const char* why) const;

  const AdjacencyGraph* graph_;
  ProposalConfig proposal_;
  ValidatorConfig validator_;
  ChainConfig chain_;
  DistrictMap current_;
  Rng rng_;
  EntropyTrace trace_;
  std::uint64_t step_ = 0;
  std::uint64_t consecutive_rejects_ = 0;
  std::uint64_t lower_bound_failures_ = 0;
  std::uint64_t std_failures_ = 0;
  double last_rejected_std_ = 0.0;
};

struct ChainResult {
  EntropyTrace trace;
  DistrictMap final_map;
};

ChainResult run_chain(const DistrictMap& seed_map, const AdjacencyGraph& graph,
                      const ProposalConfig& proposal,
                      const ValidatorConfig& validator,
                      const ChainConfig& chain, int chain_id,
                      const RetainedObserver& observer = {});

struct EnsembleHooks {
  RetainedObserver on_retained;
  // Invoked from worker threads as each chain completes, serialized by a
  // lock, in completion order.
  std::function<void(const ChainResult&)> on_chain_done;
};

// Worker count: ENSEMBLE_THREADS if set, else hardware concurrency, capped
// at `jobs`.
unsigned worker_count(std::size_t jobs);

// Runs n_chains chains in parallel; chain i is seeded with
// split_seed(base_seed, i). Results come back in chain order. The first
// failing chain (lowest id) is rethrown after all workers stop; completed
// chains were already delivered through on_chain_done.
std::vector<ChainResult> run_ensemble(const DistrictMap& seed_map,
                                      const AdjacencyGraph& graph,
                                      const ProposalConfig& proposal,
                                      const ValidatorConfig& validator,
                                      const ChainConfig& chain,
                                      const EnsembleHooks& hooks = {});

double baseline_entropy(const DistrictMap& seed_map,
                        Weighting weighting = Weighting::kPopulationWeighted);

}  // namespace mapens

#endif  // MAPENS_CHAIN_H_
