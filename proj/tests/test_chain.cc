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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <set>

#include "mapens/chain.h"
#include "mapens/errors.h"
#include "mapens/synth.h"
#include "support.h"

using namespace mapens;

namespace {

struct Fixture {
  testing::Grid grid;
  DistrictMap seed;
  ValidatorConfig validator;
};

Fixture fixture() {
  auto grid = testing::make_grid(8, 8, [](int r, int c) {
    return std::vector<std::int64_t>{40 + 7 * ((r * 8 + c) % 5), c < 4 ? 60 : 5,
                                     r < 4 ? 30 : 2};
  });
  auto seed = grid.map(testing::column_bands(grid, 4));
  auto v = ValidatorConfig{}.anchored_to(seed);
  return {std::move(grid), std::move(seed), v};
}

ChainConfig short_chain(std::uint64_t steps = 300) {
  ChainConfig c;
  c.steps = steps;
  c.n_chains = 3;
  c.base_seed = 77;
  return c;
}

}  // namespace

TEST_CASE("retained counts") {
  ChainConfig c;
  c.steps = 100;
  CHECK(c.burn_in_steps() == 10);
  CHECK(c.retained_count() == 18);
  int n = 0;
  for (std::uint64_t t = 1; t <= c.steps; ++t) n += c.is_retained_step(t);
  CHECK(n == 18);
  c.steps = 10000;
  CHECK(c.retained_count() == 1800);
  CHECK(c.retained_count() * 100 == 180000);
}

TEST_CASE("split seeds are distinct per stream") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(split_seed(5, s));
  CHECK(seen.size() == 1000);
  CHECK(split_seed(5, 3) == split_seed(5, 3));
  CHECK(split_seed(5, 3) != split_seed(6, 3));
}

TEST_CASE("chain records exactly the retained steps") {
  auto f = fixture();
  const auto r = run_chain(f.seed, f.grid.graph, {}, f.validator, short_chain(100), 0);
  CHECK(r.trace.values.size() == 18);
  CHECK(r.trace.steps.front() == 15);
  CHECK(r.trace.steps.back() == 100);
  CHECK(r.trace.accept_count + r.trace.reject_count == 100);
  CHECK(r.final_map.step() == 100);
}

TEST_CASE("same seed, same trace; different chains differ") {
  auto f = fixture();
  const auto a = run_chain(f.seed, f.grid.graph, {}, f.validator, short_chain(), 0);
  const auto b = run_chain(f.seed, f.grid.graph, {}, f.validator, short_chain(), 0);
  const auto c = run_chain(f.seed, f.grid.graph, {}, f.validator, short_chain(), 1);
  CHECK(a.trace == b.trace);
  CHECK(a.final_map == b.final_map);
  CHECK(a.trace.values != c.trace.values);
}

TEST_CASE("every state passes both validators") {
  auto f = fixture();
  int seen = 0;
  const RetainedObserver check = [&](int, std::uint64_t, const DistrictMap& m,
                                     double h) {
    ++seen;
    CHECK(validate_lower_bound(m, f.validator));
    CHECK(validate_std(m, f.validator));
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
  };
  ChainRunner runner(f.grid.graph, f.seed, {}, f.validator, short_chain(2000), 0);
  while (!runner.done()) {
    runner.advance(1, check);
    CHECK(validate(runner.current(), f.validator));
  }
  CHECK(seen == 360);
  CHECK(runner.trace().accept_count > 0);
}

TEST_CASE("snapshot and resume equals a straight run") {
  auto f = fixture();
  const auto chain = short_chain(500);
  const auto straight = run_chain(f.seed, f.grid.graph, {}, f.validator, chain, 2);

  ChainRunner first(f.grid.graph, f.seed, {}, f.validator, chain, 2);
  first.advance(137);
  const auto snap = ChainSnapshot::from_json(first.snapshot().to_json());
  ChainRunner second(f.grid.graph, f.seed, {}, f.validator, chain, snap);
  CHECK(second.step() == 137);
  second.run_to_end();
  CHECK(second.finish() == straight.trace);
  CHECK(second.current() == straight.final_map);
}

TEST_CASE("ensemble is ordered and independent of worker count") {
  auto f = fixture();
  auto chain = short_chain(200);
  chain.n_chains = 4;
  ::setenv("ENSEMBLE_THREADS", "1", 1);
  const auto one = run_ensemble(f.seed, f.grid.graph, {}, f.validator, chain);
  ::setenv("ENSEMBLE_THREADS", "3", 1);
  int done = 0;
  EnsembleHooks hooks;
  hooks.on_chain_done = [&](const ChainResult&) { ++done; };
  const auto three = run_ensemble(f.seed, f.grid.graph, {}, f.validator, chain, hooks);
  ::unsetenv("ENSEMBLE_THREADS");
  CHECK(done == 4);
  REQUIRE(one.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(one[i].trace.chain_id == i);
    CHECK(one[i].trace == three[i].trace);
    CHECK(one[i].trace.seed == split_seed(chain.base_seed, i));
  }
}

TEST_CASE("worker count honours ENSEMBLE_THREADS") {
  ::setenv("ENSEMBLE_THREADS", "2", 1);
  CHECK(worker_count(10) == 2);
  CHECK(worker_count(1) == 1);
  ::unsetenv("ENSEMBLE_THREADS");
  CHECK(worker_count(5) >= 1);
}

TEST_CASE("a chain that cannot move is reported stuck") {
  auto f = fixture();
  auto v = f.validator;
  v.min_population = *std::min_element(f.seed.totals().begin(), f.seed.totals().end());
  v.std_lower_factor = 0.999999;
  v.std_upper_factor = 1.000001;
  auto chain = short_chain(500);
  chain.max_consecutive_rejects = 20;
  CHECK_THROWS_AS(run_chain(f.seed, f.grid.graph, {}, v, chain, 0), StuckChainError);
}

TEST_CASE("seed that fails its own validators is a region error") {
  auto f = fixture();
  auto v = f.validator;
  v.min_population = 1'000'000;
  CHECK_THROWS_AS(run_chain(f.seed, f.grid.graph, {}, v, short_chain(), 0),
                  RegionError);
}

TEST_CASE("baseline entropy of planted extremes") {
  for (double level : {0.0, 1.0}) {
    SynthParams p;
    p.segregation = level;
    const auto region = make_synthetic_region(p);
    auto t = std::make_shared<UnitTable>();
    t->groups = p.schema.size();
    for (const auto& u : region.units) {
      t->ids.push_back(u.id);
      t->counts.insert(t->counts.end(), u.counts.begin(), u.counts.end());
    }
    const DistrictMap m(t, {"a", "b", "c", "d"}, region.planted);
    CHECK(baseline_entropy(m) == Catch::Approx(level).margin(1e-12));
  }
}
