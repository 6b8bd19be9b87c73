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

#ifndef MAPENS_PIPELINE_H_
#define MAPENS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mapens/adjacency.h"
#include "mapens/config.h"
#include "mapens/crosswalk.h"
#include "mapens/diagnostics.h"
#include "mapens/metrics.h"
#include "mapens/partition.h"
#include "mapens/region.h"
#include "mapens/synth.h"

namespace mapens {

inline constexpr std::string_view kEngineName = "mapens";
inline constexpr std::string_view kEngineVersion = "0.1.0";

// First line of every CSV the engine writes.
std::string csv_header_comment(const EngineConfig& config);
nlohmann::json meta_json(const EngineConfig& config);

// Region inputs, loaded and crosswalked.
struct PreparedRegion {
  std::string name;
  std::vector<SpatialUnit> units;
  Crosswalk crosswalk;  // after empty districts are dropped
  AdjacencyGraph graph;  // all units
  ChainRegion chain;
  std::vector<UnitShape> shapes;  // per chain node
};

// Reads blocks.geojson and districts.geojson from `region_dir`. When a
// graph.json from a previous ingest sits next to them it is reused instead
// of recomputing adjacency.
PreparedRegion prepare_region(const std::filesystem::path& region_dir,
                              const EngineConfig& config);

// Writes the crosswalk table, the adjacency graph and the seed map to `out_dir`.
void cmd_ingest(const std::filesystem::path& region_dir,
                const std::filesystem::path& out_dir,
                const EngineConfig& config, std::ostream& log);

struct RunOptions {
  std::filesystem::path region_dir;
  std::filesystem::path out_dir;
  EngineConfig config;
  bool dump_maps = false;
  bool dry_run = false;
};

// Ensemble + diagnostics. Writes one trace per chain under traces/, a
// manifest, and the report files (plus maps/ with dump_maps).
// Returns the report; throws StuckChainError / DegenerateRegionError.
std::optional<EnsembleReport> cmd_run(const RunOptions& options,
                                      std::ostream& log);

struct PlaceboRunOptions {
  RunOptions run;
  int replicates = 20;
  bool shared_shuffle = false;
};

struct PlaceboSummary {
  std::size_t replicates = 0;
  std::size_t inside_central_95 = 0;
  double inside_fraction() const;
};

std::optional<PlaceboSummary> cmd_placebo(const PlaceboRunOptions& options,
                                          std::ostream& log);

// Re-derives report files from a run directory's manifest and traces.
EnsembleReport cmd_report(const std::filesystem::path& run_dir,
                          std::ostream& log);

void cmd_synth(const SynthParams& params, const std::filesystem::path& out_dir,
               const EngineConfig& config, std::ostream& log);

// step,H
void write_trace_csv(std::ostream& out, const EntropyTrace& trace,
                     const EngineConfig& config);
EntropyTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace mapens

#endif  // MAPENS_PIPELINE_H_
