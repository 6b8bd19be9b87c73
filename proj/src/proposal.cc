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

#include "mapens/proposal.h"

#include <algorithm>
#include <deque>

#include "mapens/errors.h"

namespace mapens {
namespace {

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Connected pieces of `district` with `removed` nodes taken out.
int count_components(const DistrictMap& map, const AdjacencyGraph& graph,
                     int district, const std::vector<char>& removed) {
  std::vector<char> seen(map.node_count(), 0);
  std::vector<int> stack;
  int pieces = 0;
  for (std::size_t start = 0; start < map.node_count(); ++start) {
    if (map.district_of(static_cast<int>(start)) != district || removed[start] ||
        seen[start]) {
      continue;
    }
    ++pieces;
    seen[start] = 1;
    stack.push_back(static_cast<int>(start));
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : graph.neighbors(v)) {
        if (!seen[w] && !removed[w] && map.district_of(w) == district) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return pieces;
}

// Randomized breadth-first growth from `seed` inside `district`.
std::vector<int> grow_chunk(const DistrictMap& map, const AdjacencyGraph& graph,
                            int seed, int district, std::size_t size, Rng& rng) {
  std::vector<int> chunk;
  std::vector<int> queued{seed};
  std::deque<int> frontier{seed};
  std::vector<int> next;
  while (!frontier.empty() && chunk.size() < size) {
    const int v = frontier.front();
    frontier.pop_front();
    chunk.push_back(v);
    next.clear();
    for (int w : graph.neighbors(v)) {
      if (map.district_of(w) == district &&
          std::find(queued.begin(), queued.end(), w) == queued.end()) {
        next.push_back(w);
      }
    }
    std::shuffle(next.begin(), next.end(), rng);
    for (int w : next) {
      queued.push_back(w);
      frontier.push_back(w);
    }
  }
  return chunk;
}

}  // namespace

void ProposalConfig::check() const {
  if (max_chunk_size < 1) throw ContractError("max_chunk_size must be >= 1");
  if (contiguity_attempts < 1) {
    throw ContractError("contiguity_attempts must be >= 1");
  }
}

int district_components(const DistrictMap& map, const AdjacencyGraph& graph,
                        int district) {
  return count_components(map, graph, district,
                          std::vector<char>(map.node_count(), 0));
}

bool source_is_connected_after_removal(const DistrictMap& map,
                                       const AdjacencyGraph& graph,
                                       std::span<const int> chunk) {
  if (chunk.empty()) return true;
  const int source = map.district_of(chunk.front());
  std::vector<char> removed(map.node_count(), 0);
  for (int v : chunk) {
    if (map.district_of(v) != source) {
      throw ContractError("chunk spans more than one district");
    }
    removed[v] = 1;
  }
  const int after = count_components(map, graph, source, removed);
  if (after <= 1) return true;
  return after <= district_components(map, graph, source);
}

DistrictMap propose(const DistrictMap& map, const AdjacencyGraph& graph,
                    const ProposalConfig& cfg, Rng& rng, ProposalLog* log) {
  cfg.check();
  DistrictMap candidate = map;
  std::vector<DistrictEdge> pairs = district_edges(candidate, graph);
  if (log) *log = {};
  if (!pairs.empty()) {
    const std::size_t r = 1 + uniform_index(rng, pairs.size());
    if (log) log->requested = static_cast<int>(r);
    const int attempts = cfg.enforce_contiguity ? cfg.contiguity_attempts : 1;
    std::vector<int> boundary;
    for (std::size_t i = 0; i < r; ++i) {
      if (i > 0) pairs = district_edges(candidate, graph);
      if (pairs.empty()) break;
      const DistrictEdge& pair = pairs[uniform_index(rng, pairs.size())];
      const bool forward = uniform_index(rng, 2) == 0;
      SubFlip sub;
      sub.source = forward ? pair.a : pair.b;
      sub.target = forward ? pair.b : pair.a;

      boundary.clear();
      for (int e : pair.cut_edges) {
        const auto& edge = graph.edge(e);
        boundary.push_back(candidate.district_of(edge.u) == sub.source ? edge.u
                                                                       : edge.v);
      }
      std::sort(boundary.begin(), boundary.end());
      boundary.erase(std::unique(boundary.begin(), boundary.end()),
                     boundary.end());

      for (int a = 0; a < attempts; ++a) {
        const int seed = boundary[uniform_index(rng, boundary.size())];
        const std::size_t size =
            1 + uniform_index(rng, static_cast<std::size_t>(cfg.max_chunk_size));
        std::vector<int> chunk =
            grow_chunk(candidate, graph, seed, sub.source, size, rng);
        sub.attempts = a + 1;
        sub.seed_node = seed;
        if (!cfg.enforce_contiguity ||
            source_is_connected_after_removal(candidate, graph, chunk)) {
          candidate.flip(chunk, sub.target);
          sub.chunk = std::move(chunk);
          break;
        }
      }
      if (log) log->flips.push_back(std::move(sub));
    }
  }
  candidate.set_step(map.step() + 1);
  return candidate;
}

}  // namespace mapens
