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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mapens/config.h"
#include "mapens/errors.h"
#include "mapens/pipeline.h"
#include "mapens/synth.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitStuckChain = 2;
constexpr int kExitDegenerateRegion = 3;

struct Overrides {
  std::string config_path;
  std::optional<int> chains;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> seed;

  mapens::EngineConfig resolve() const {
    mapens::EngineConfig cfg = config_path.empty()
                                   ? mapens::EngineConfig{}
                                   : mapens::EngineConfig::load(config_path);
    if (chains) cfg.chain.n_chains = *chains;
    if (steps) cfg.chain.steps = *steps;
    if (seed) cfg.chain.base_seed = *seed;
    cfg.check();
    return cfg;
  }
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--chains", o.chains, "number of chains");
  cmd->add_option("--steps", o.steps, "steps per chain");
  cmd->add_option("--seed", o.seed, "base seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mapens: redistricting-ensemble segregation analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mapens::kEngineVersion));

  Overrides ov;
  std::string region;
  std::string out;
  bool dump_maps = false;
  bool dry_run = false;
  bool shared_shuffle = false;
  std::optional<int> replicates;
  mapens::SynthParams synth;

  auto* ingest = app.add_subcommand("ingest", "build crosswalk and adjacency");
  ingest->add_option("--region", region, "directory with blocks/districts GeoJSON")
      ->required()
      ->check(CLI::ExistingDirectory);
  ingest->add_option("--out", out, "output directory")->required();
  add_overrides(ingest, ov);

  auto* run = app.add_subcommand("run", "run the ensemble and diagnostics");
  run->add_option("--region", region)->required()->check(CLI::ExistingDirectory);
  run->add_option("--out", out)->required();
  run->add_flag("--dump-maps", dump_maps, "write every retained map");
  run->add_flag("--dry-run", dry_run, "validate config and inputs only");
  add_overrides(run, ov);

  auto* placebo = app.add_subcommand("placebo", "shuffled-population control");
  placebo->add_option("--region", region)->required()->check(CLI::ExistingDirectory);
  placebo->add_option("--out", out)->required();
  placebo->add_option("--replicates", replicates, "number of replicates");
  placebo->add_flag("--shared-shuffle", shared_shuffle,
                    "one shuffle for every replicate");
  placebo->add_flag("--dry-run", dry_run);
  add_overrides(placebo, ov);

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic grid region");
  synth_cmd->add_option("--out", out)->required();
  synth_cmd->add_option("--rows", synth.rows);
  synth_cmd->add_option("--cols", synth.cols);
  synth_cmd->add_option("--districts", synth.districts);
  synth_cmd->add_option("--segregation", synth.segregation);
  synth_cmd->add_option("--seed", synth.seed);

  auto* report = app.add_subcommand("report", "rebuild reports from a run directory");
  report->add_option("--out", out, "run directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      mapens::cmd_ingest(region, out, ov.resolve(), std::cout);
    } else if (*run) {
      mapens::RunOptions o{region, out, ov.resolve(), dump_maps, dry_run};
      mapens::cmd_run(o, std::cout);
    } else if (*placebo) {
      mapens::PlaceboRunOptions o;
      o.run = {region, out, ov.resolve(), false, dry_run};
      o.replicates = replicates.value_or(o.run.config.placebo_replicates);
      o.shared_shuffle = shared_shuffle || o.run.config.placebo_shared_shuffle;
      mapens::cmd_placebo(o, std::cout);
    } else if (*synth_cmd) {
      synth.check();
      mapens::cmd_synth(synth, out, mapens::EngineConfig{}, std::cout);
    } else if (*report) {
      mapens::cmd_report(out, std::cout);
    }
  } catch (const mapens::StuckChainError& e) {
    std::cerr << "stuck chain: " << e.what() << '\n';
    return kExitStuckChain;
  } catch (const mapens::RegionError& e) {
    std::cerr << "degenerate region: " << e.what() << '\n';
    return kExitDegenerateRegion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
