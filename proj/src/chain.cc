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

#include "mapens/chain.h"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "mapens/errors.h"
#include "parallel.h"

namespace mapens {

void ChainConfig::check() const {
  if (steps == 0) throw ContractError("chain.steps must be positive");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw ContractError("chain.burn_in_fraction must lie in [0, 1)");
  }
  if (thinning == 0) throw ContractError("chain.thinning must be positive");
  if (n_chains < 1) throw ContractError("chain.n_chains must be positive");
  if (max_consecutive_rejects == 0) {
    throw ContractError("chain.max_consecutive_rejects must be positive");
  }
  if (retained_count() < 2) {
    throw ContractError("chain settings retain fewer than two samples");
  }
}

std::uint64_t ChainConfig::burn_in_steps() const {
  return static_cast<std::uint64_t>(
      std::floor(static_cast<double>(steps) * burn_in_fraction + 1e-9));
}

std::uint64_t ChainConfig::retained_count() const {
  return (steps - burn_in_steps()) / thinning;
}

bool ChainConfig::is_retained_step(std::uint64_t t) const {
  const std::uint64_t burn = burn_in_steps();
  return t > burn && t <= steps && (t - burn) % thinning == 0;
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double EntropyTrace::acceptance_rate() const {
  const auto n = accept_count + reject_count;
  return n == 0 ? 0.0 : static_cast<double>(accept_count) / static_cast<double>(n);
}

nlohmann::json ChainSnapshot::to_json() const {
  return {{"chain_id", trace.chain_id},
          {"seed", trace.seed},
          {"steps", trace.steps},
          {"values", trace.values},
          {"accept_count", trace.accept_count},
          {"reject_count", trace.reject_count},
          {"accept_after_burn_in", trace.accept_after_burn_in},
          {"step", step},
          {"consecutive_rejects", consecutive_rejects},
          {"lower_bound_failures", lower_bound_failures},
          {"std_failures", std_failures},
          {"assignment", assignment},
          {"rng_state", rng_state}};
}

ChainSnapshot ChainSnapshot::from_json(const nlohmann::json& j) {
  ChainSnapshot s;
  s.trace.chain_id = j.at("chain_id").get<int>();
  s.trace.seed = j.at("seed").get<std::uint64_t>();
  s.trace.steps = j.at("steps").get<std::vector<std::uint64_t>>();
  s.trace.values = j.at("values").get<std::vector<double>>();
  s.trace.accept_count = j.at("accept_count").get<std::uint64_t>();
  s.trace.reject_count = j.at("reject_count").get<std::uint64_t>();
  s.trace.accept_after_burn_in = j.at("accept_after_burn_in").get<std::uint64_t>();
  s.step = j.at("step").get<std::uint64_t>();
  s.consecutive_rejects = j.at("consecutive_rejects").get<std::uint64_t>();
  s.lower_bound_failures = j.at("lower_bound_failures").get<std::uint64_t>();
  s.std_failures = j.at("std_failures").get<std::uint64_t>();
  s.assignment = j.at("assignment").get<std::vector<int>>();
  s.rng_state = j.at("rng_state").get<std::string>();
  return s;
}

ChainRunner::ChainRunner(const AdjacencyGraph& graph, DistrictMap seed,
                         ProposalConfig proposal, ValidatorConfig validator,
                         ChainConfig chain, int chain_id)
    : graph_(&graph),
      proposal_(proposal),
      validator_(validator),
      chain_(chain),
      current_(std::move(seed)) {
  chain_.check();
  proposal_.check();
  validator_.check();
  if (current_.node_count() != graph.node_count()) {
    throw ContractError("seed map and graph disagree in size");
  }
  if (!validate(current_, validator_)) {
    throw RegionError("seed map fails its own validators (min district "
                      "population or spread)");
  }
  current_.set_step(0);
  trace_.chain_id = chain_id;
  trace_.seed = split_seed(chain_.base_seed, static_cast<std::uint64_t>(chain_id));
  trace_.steps.reserve(chain_.retained_count());
  trace_.values.reserve(chain_.retained_count());
  rng_.seed(trace_.seed);
}

ChainRunner::ChainRunner(const AdjacencyGraph& graph, const DistrictMap& seed,
                         ProposalConfig proposal, ValidatorConfig validator,
                         ChainConfig chain, const ChainSnapshot& resume_from)
    : graph_(&graph),
      proposal_(proposal),
      validator_(validator),
      chain_(chain),
      current_(seed.unit_table(), seed.labels(), resume_from.assignment,
               resume_from.step),
      trace_(resume_from.trace),
      step_(resume_from.step),
      consecutive_rejects_(resume_from.consecutive_rejects),
      lower_bound_failures_(resume_from.lower_bound_failures),
      std_failures_(resume_from.std_failures) {
  chain_.check();
  proposal_.check();
  validator_.check();
  std::istringstream in(resume_from.rng_state);
  in >> rng_;
  if (!in) throw IngestError("snapshot has a malformed rng state");
}

std::string ChainRunner::stuck_message(const char* why) const {
  std::ostringstream msg;
  msg << "chain " << trace_.chain_id << " stuck at step " << step_ << ": "
      << why << " (lower-bound rejections " << lower_bound_failures_
      << ", spread rejections " << std_failures_ << ", last rejected spread "
      << last_rejected_std_ << " outside ["
      << validator_.std_lower_factor * validator_.s0 << ", "
      << validator_.std_upper_factor * validator_.s0 << "])";
  return msg.str();
}

void ChainRunner::advance(std::uint64_t n, const RetainedObserver& observer) {
  const std::uint64_t burn = chain_.burn_in_steps();
  for (std::uint64_t i = 0; i < n && step_ < chain_.steps; ++i) {
    DistrictMap candidate = propose(current_, *graph_, proposal_, rng_);
    ++step_;
    const bool lower_ok = validate_lower_bound(candidate, validator_);
    const bool std_ok = lower_ok && validate_std(candidate, validator_);
    if (std_ok) {
      current_ = std::move(candidate);
      ++trace_.accept_count;
      if (step_ > burn) ++trace_.accept_after_burn_in;
      consecutive_rejects_ = 0;
    } else {
      ++trace_.reject_count;
      ++consecutive_rejects_;
      if (!lower_ok) {
        ++lower_bound_failures_;
      } else {
        ++std_failures_;
        last_rejected_std_ =
            district_population_std(candidate.totals(), validator_.divisor);
      }
      if (consecutive_rejects_ >= chain_.max_consecutive_rejects) {
        throw StuckChainError(stuck_message("too many consecutive rejections"));
      }
    }
    current_.set_step(step_);
    if (chain_.is_retained_step(step_)) {
      const double h = region_entropy(current_, chain_.weighting).index;
      trace_.steps.push_back(step_);
      trace_.values.push_back(h);
      if (observer) observer(trace_.chain_id, step_, current_, h);
    }
  }
}

void ChainRunner::run_to_end(const RetainedObserver& observer) {
  advance(chain_.steps, observer);
}

ChainSnapshot ChainRunner::snapshot() const {
  ChainSnapshot s;
  s.trace = trace_;
  s.step = step_;
  s.consecutive_rejects = consecutive_rejects_;
  s.lower_bound_failures = lower_bound_failures_;
  s.std_failures = std_failures_;
  s.assignment = current_.assignment();
  std::ostringstream out;
  out << rng_;
  s.rng_state = out.str();
  return s;
}

EntropyTrace ChainRunner::finish() const {
  if (!done()) throw ContractError("chain finished before its last step");
  if (chain_.retained_count() > 0 && trace_.accept_after_burn_in == 0) {
    throw StuckChainError(
        stuck_message("no proposal was accepted after burn-in"));
  }
  return trace_;
}

ChainResult run_chain(const DistrictMap& seed_map, const AdjacencyGraph& graph,
                      const ProposalConfig& proposal,
                      const ValidatorConfig& validator,
                      const ChainConfig& chain, int chain_id,
                      const RetainedObserver& observer) {
  ChainRunner runner(graph, seed_map, proposal, validator, chain, chain_id);
  runner.run_to_end(observer);
  return {runner.finish(), runner.current()};
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ENSEMBLE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  if (jobs < n) n = static_cast<unsigned>(std::max<std::size_t>(jobs, 1));
  return n;
}

std::vector<ChainResult> run_ensemble(const DistrictMap& seed_map,
                                      const AdjacencyGraph& graph,
                                      const ProposalConfig& proposal,
                                      const ValidatorConfig& validator,
                                      const ChainConfig& chain,
                                      const EnsembleHooks& hooks) {
  chain.check();
  const auto jobs = static_cast<std::size_t>(chain.n_chains);
  std::vector<std::optional<ChainResult>> slots(jobs);
  std::mutex hook_mutex;
  RetainedObserver observer;
  if (hooks.on_retained) {
    observer = [&](int id, std::uint64_t step, const DistrictMap& m, double h) {
      std::lock_guard<std::mutex> lock(hook_mutex);
      hooks.on_retained(id, step, m, h);
    };
  }
  internal::parallel_for(jobs, worker_count(jobs), [&](std::size_t i) {
    ChainResult r = run_chain(seed_map, graph, proposal, validator, chain,
                              static_cast<int>(i), observer);
    if (hooks.on_chain_done) {
      std::lock_guard<std::mutex> lock(hook_mutex);
      hooks.on_chain_done(r);
    }
    slots[i].emplace(std::move(r));
  });
  std::vector<ChainResult> out;
  out.reserve(jobs);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double baseline_entropy(const DistrictMap& seed_map, Weighting weighting) {
  return region_entropy(seed_map, weighting).index;
}

}  // namespace mapens
