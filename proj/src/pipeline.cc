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

#include "mapens/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "mapens/errors.h"
#include "mapens/kernels.h"
#include "mapens/placebo.h"

namespace mapens {
namespace fs = std::filesystem;
namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write " + path.string());
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string chain_file(const char* stem, int id) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d.csv", stem, id);
  return buf;
}

std::string region_name(const fs::path& dir) {
  fs::path p = dir;
  if (p.filename().empty()) p = p.parent_path();
  return p.filename().string();
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  open_out(path) << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

nlohmann::json compactness_json(const CompactnessStats& s) {
  return {{"min_pp", s.min_pp}, {"mean_pp", s.mean_pp}};
}

// Aggregates per-chain end states against the seed.
CompactnessAudit audit_ends(const CompactnessStats& seed,
                            const std::vector<CompactnessStats>& ends) {
  CompactnessAudit a;
  a.seed = seed;
  a.end.min_pp = ends.empty() ? seed.min_pp : ends.front().min_pp;
  double mean_sum = 0.0;
  for (const auto& e : ends) {
    a.end.min_pp = std::min(a.end.min_pp, e.min_pp);
    mean_sum += e.mean_pp;
    a.pass = a.pass && compactness_passes(seed, e);
  }
  a.end.mean_pp = ends.empty() ? seed.mean_pp
                               : mean_sum / static_cast<double>(ends.size());
  return a;
}

struct RunContext {
  PreparedRegion region;
  ValidatorConfig validator;
  double baseline = 0.0;
  CompactnessStats seed_compactness;
};

RunContext prepare_run(const RunOptions& options, std::ostream& log) {
  options.config.check();
  RunContext ctx{prepare_region(options.region_dir, options.config), {}, 0.0, {}};
  const DistrictMap& seed = ctx.region.chain.seed;
  ctx.validator = options.config.validators.anchored_to(seed);
  if (!validate(seed, ctx.validator)) {
    throw RegionError("seed map has a district below validators.min_population");
  }
  ctx.baseline = baseline_entropy(seed, options.config.chain.weighting);
  ctx.seed_compactness =
      compactness_audit(seed, ctx.region.chain.graph, ctx.region.shapes);
  log << "region " << ctx.region.name << ": " << ctx.region.units.size()
      << " units, " << seed.node_count() << " in chain, "
      << seed.district_count() << " districts, baseline H = "
      << num(ctx.baseline) << ", s0 = " << num(ctx.validator.s0) << '\n';
  return ctx;
}

}  // namespace

std::string csv_header_comment(const EngineConfig& config) {
  return "# " + std::string(kEngineName) + " " + std::string(kEngineVersion) +
         " config_hash=" + config.hash();
}

nlohmann::json meta_json(const EngineConfig& config) {
  return {{"engine", kEngineName},
          {"version", kEngineVersion},
          {"config_hash", config.hash()}};
}

PreparedRegion prepare_region(const fs::path& region_dir,
                              const EngineConfig& config) {
  auto units = read_units_geojson(region_dir / "blocks.geojson", config.schema);
  const auto districts = read_districts_geojson(region_dir / "districts.geojson");

  AdjacencyGraph graph;
  const fs::path cached = region_dir / "graph.json";
  bool reuse = false;
  if (fs::exists(cached)) {
    graph = AdjacencyGraph::from_json(read_json_file(cached));
    reuse = graph.node_count() == units.size();
    for (std::size_t i = 0; reuse && i < units.size(); ++i) {
      reuse = graph.ids()[i] == units[i].id;
    }
  }
  if (!reuse) graph = build_adjacency(units);
  Crosswalk cw = drop_empty_districts(build_crosswalk(units, districts), units);
  ChainRegion chain = from_crosswalk(cw, graph, units);
  std::vector<UnitShape> shapes;
  shapes.reserve(chain.source_units.size());
  for (int u : chain.source_units) {
    shapes.push_back({area(units[u].geometry), perimeter(units[u].geometry)});
  }
  return PreparedRegion{region_name(region_dir), std::move(units), std::move(cw),
                        std::move(graph), std::move(chain), std::move(shapes)};
}

void cmd_ingest(const fs::path& region_dir, const fs::path& out_dir,
                const EngineConfig& config, std::ostream& log) {
  config.check();
  const std::string name = region_name(region_dir);
  const auto units =
      read_units_geojson(region_dir / "blocks.geojson", config.schema);
  const auto districts = read_districts_geojson(region_dir / "districts.geojson");
  const AdjacencyGraph graph = build_adjacency(units);
  const Crosswalk cw =
      drop_empty_districts(build_crosswalk(units, districts), units);
  fs::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "crosswalk.csv");
    out << csv_header_comment(config) << '\n';
    write_crosswalk_csv(out, cw);
  }
  {
    nlohmann::json g = graph.to_json();
    g["_meta"] = meta_json(config);
    write_json(out_dir / "graph.json", g);
  }
  {
    auto out = open_out(out_dir / "seed_map.csv");
    out << csv_header_comment(config) << '\n' << "unit_id,district_label\n";
    for (const auto& u : units) {
      auto it = cw.assignment.find(u.id);
      if (it != cw.assignment.end()) {
        out << u.id << ',' << it->second << '\n';
      }
    }
  }
  log << "ingest " << name << ": " << units.size() << " units, "
      << cw.assignment.size() << " assigned, "
      << cw.excluded.size() << " excluded, "
      << cw.labels().size() << " districts, " << graph.edge_count()
      << " adjacencies\n";
}

void write_trace_csv(std::ostream& out, const EntropyTrace& trace,
                     const EngineConfig& config) {
  out << csv_header_comment(config) << '\n' << "step,H\n";
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    out << trace.steps[i] << ',' << num(trace.values[i]) << '\n';
  }
}

EntropyTrace read_trace_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  EntropyTrace t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw IngestError(path.string() + ": malformed trace line");
    }
    t.steps.push_back(std::stoull(line.substr(0, comma)));
    t.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return t;
}

std::optional<EnsembleReport> cmd_run(const RunOptions& options,
                                      std::ostream& log) {
  RunContext ctx = prepare_run(options, log);
  const EngineConfig& cfg = options.config;
  if (options.dry_run) {
    log << "dry run: config " << cfg.hash() << " and inputs are valid; "
        << cfg.chain.n_chains << " chains x " << cfg.chain.steps
        << " steps would retain " << cfg.chain.retained_count()
        << " values each\n";
    return std::nullopt;
  }

  const fs::path out = options.out_dir;
  fs::create_directories(out / "traces");
  if (options.dump_maps) fs::create_directories(out / "maps");

  nlohmann::json manifest = {
      {"_meta", meta_json(cfg)},
      {"region", ctx.region.name},
      {"config", cfg.canonical()},
      {"baseline", ctx.baseline},
      {"s0", ctx.validator.s0},
      {"districts", ctx.region.chain.seed.labels()},
      {"chain_units", ctx.region.chain.seed.node_count()},
      {"excluded_units", ctx.region.crosswalk.excluded.size()},
      {"seed_compactness", compactness_json(ctx.seed_compactness)},
      {"simd", kernels::isa_name(kernels::active_isa())},
      {"status", "running"}};
  write_json(out / "manifest.json", manifest);

  std::map<int, std::ofstream> map_files;
  EnsembleHooks hooks;
  hooks.on_chain_done = [&](const ChainResult& r) {
    auto f = open_out(out / "traces" / chain_file("chain", r.trace.chain_id));
    write_trace_csv(f, r.trace, cfg);
  };
  if (options.dump_maps) {
    hooks.on_retained = [&](int id, std::uint64_t step, const DistrictMap& m,
                            double) {
      auto it = map_files.find(id);
      if (it == map_files.end()) {
        it = map_files.emplace(id, open_out(out / "maps" / chain_file("chain", id)))
                 .first;
        it->second << csv_header_comment(cfg) << '\n'
                   << "step,unit_id,district_label\n";
      }
      for (std::size_t v = 0; v < m.node_count(); ++v) {
        it->second << step << ',' << m.units().ids[v] << ','
                   << m.labels()[m.district_of(static_cast<int>(v))] << '\n';
      }
    };
  }

  std::vector<ChainResult> results;
  try {
    results = run_ensemble(ctx.region.chain.seed, ctx.region.chain.graph,
                           cfg.proposal, ctx.validator, cfg.chain, hooks);
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    write_json(out / "manifest.json", manifest);
    throw;
  }
  map_files.clear();

  std::vector<EntropyTrace> traces;
  std::vector<CompactnessStats> ends;
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& r : results) {
    traces.push_back(r.trace);
    ends.push_back(
        compactness_audit(r.final_map, ctx.region.chain.graph, ctx.region.shapes));
    chains.push_back({{"chain_id", r.trace.chain_id},
                      {"seed", r.trace.seed},
                      {"accept_count", r.trace.accept_count},
                      {"reject_count", r.trace.reject_count},
                      {"acceptance_rate", r.trace.acceptance_rate()},
                      {"retained", r.trace.values.size()},
                      {"end_compactness", compactness_json(ends.back())},
                      {"compactness_pass",
                       compactness_passes(ctx.seed_compactness, ends.back())}});
  }
  const CompactnessAudit audit = audit_ends(ctx.seed_compactness, ends);
  EnsembleReport report = summarize(traces, ctx.baseline, audit, ctx.region.name);

  manifest["status"] = "complete";
  manifest["chains"] = chains;
  manifest["counts"] = {
      {"proposals", report.n_steps},
      {"retained_values", report.n_samples},
      {"retained_per_chain", cfg.chain.retained_count()}};
  manifest["compactness"] = {{"end", compactness_json(audit.end)},
                             {"pass", audit.pass}};
  write_json(out / "manifest.json", manifest);

  nlohmann::json rj = report.to_json();
  rj["_meta"] = meta_json(cfg);
  write_json(out / "report.json", rj);
  {
    auto f = open_out(out / "report.csv");
    f << csv_header_comment(cfg) << '\n';
    write_report_csv(f, std::span<const EnsembleReport>(&report, 1));
  }
  {
    auto f = open_out(out / "rhat.csv");
    f << csv_header_comment(cfg) << '\n';
    write_rhat_csv(f, std::span<const EnsembleReport>(&report, 1));
  }
  print_report(log, report);
  return report;
}

EnsembleReport cmd_report(const fs::path& run_dir, std::ostream& log) {
  const nlohmann::json manifest = read_json_file(run_dir / "manifest.json");
  if (manifest.value("status", "") != "complete") {
    throw IngestError(run_dir.string() + ": run did not complete");
  }
  std::istringstream cfg_text(manifest.at("config").get<std::string>());
  const EngineConfig cfg = EngineConfig::parse(cfg_text);

  std::vector<EntropyTrace> traces;
  std::vector<CompactnessStats> ends;
  for (const auto& c : manifest.at("chains")) {
    const int id = c.at("chain_id").get<int>();
    EntropyTrace t = read_trace_csv(run_dir / "traces" / chain_file("chain", id));
    t.chain_id = id;
    t.seed = c.at("seed").get<std::uint64_t>();
    t.accept_count = c.at("accept_count").get<std::uint64_t>();
    t.reject_count = c.at("reject_count").get<std::uint64_t>();
    traces.push_back(std::move(t));
    const auto& e = c.at("end_compactness");
    ends.push_back({e.at("min_pp").get<double>(), e.at("mean_pp").get<double>()});
  }
  const auto& s = manifest.at("seed_compactness");
  const CompactnessStats seed{s.at("min_pp").get<double>(),
                              s.at("mean_pp").get<double>()};
  EnsembleReport report =
      summarize(traces, manifest.at("baseline").get<double>(),
                audit_ends(seed, ends), manifest.at("region").get<std::string>());

  nlohmann::json rj = report.to_json();
  rj["_meta"] = meta_json(cfg);
  write_json(run_dir / "report.json", rj);
  {
    auto f = open_out(run_dir / "report.csv");
    f << csv_header_comment(cfg) << '\n';
    write_report_csv(f, std::span<const EnsembleReport>(&report, 1));
  }
  {
    auto f = open_out(run_dir / "rhat.csv");
    f << csv_header_comment(cfg) << '\n';
    write_rhat_csv(f, std::span<const EnsembleReport>(&report, 1));
  }
  print_report(log, report);
  return report;
}

double PlaceboSummary::inside_fraction() const {
  return replicates == 0 ? 0.0
                         : static_cast<double>(inside_central_95) /
                               static_cast<double>(replicates);
}

std::optional<PlaceboSummary> cmd_placebo(const PlaceboRunOptions& options,
                                          std::ostream& log) {
  RunContext ctx = prepare_run(options.run, log);
  const EngineConfig& cfg = options.run.config;
  if (options.run.dry_run) {
    log << "dry run: " << options.replicates << " placebo replicates x "
        << cfg.chain.steps << " steps\n";
    return std::nullopt;
  }
  const fs::path out = options.run.out_dir;
  fs::create_directories(out / "traces");

  PlaceboOptions po;
  po.replicates = options.replicates;
  po.shared_shuffle = options.shared_shuffle;
  po.on_replicate_done = [&](const PlaceboReplicate& r) {
    auto f = open_out(out / "traces" / chain_file("chain", r.replicate));
    write_trace_csv(f, r.trace, cfg);
  };
  const std::vector<PlaceboReplicate> reps =
      run_placebo(ctx.region.units, ctx.region.crosswalk, ctx.region.graph,
                  cfg.proposal, cfg.validators, cfg.chain, po);

  PlaceboSummary summary;
  summary.replicates = reps.size();
  nlohmann::json rows = nlohmann::json::array();
  {
    auto f = open_out(out / "placebo_baselines.csv");
    f << csv_header_comment(cfg) << '\n'
      << "replicate,shuffle_seed,baseline,trace_mean,baseline_quantile,"
         "inside_central_95\n";
    for (const auto& r : reps) {
      const double mean =
          r.trace.values.empty()
              ? 0.0
              : kernels::sum(r.trace.values) /
                    static_cast<double>(r.trace.values.size());
      const bool inside = r.baseline_inside(0.95);
      if (inside) ++summary.inside_central_95;
      f << r.replicate << ',' << r.shuffle_seed << ',' << num(r.baseline) << ','
        << num(mean) << ',' << num(r.baseline_quantile()) << ','
        << (inside ? "true" : "false") << '\n';
      rows.push_back({{"replicate", r.replicate},
                      {"shuffle_seed", r.shuffle_seed},
                      {"chain_seed", r.trace.seed},
                      {"baseline", r.baseline},
                      {"trace_mean", mean},
                      {"baseline_quantile", r.baseline_quantile()},
                      {"inside_central_95", inside},
                      {"acceptance_rate", r.trace.acceptance_rate()}});
    }
  }
  write_json(out / "manifest.json",
             {{"_meta", meta_json(cfg)},
              {"region", ctx.region.name},
              {"config", cfg.canonical()},
              {"placebo", true},
              {"shared_shuffle", options.shared_shuffle},
              {"replicates", rows},
              {"status", "complete"}});
  write_json(out / "report.json",
             {{"_meta", meta_json(cfg)},
              {"region", ctx.region.name},
              {"observed_baseline", ctx.baseline},
              {"replicates", summary.replicates},
              {"inside_central_95", summary.inside_central_95},
              {"inside_fraction", summary.inside_fraction()}});
  log << "placebo: " << summary.inside_central_95 << " of " << summary.replicates
      << " replicate baselines inside the central 95% of their own chains\n";
  return summary;
}

void cmd_synth(const SynthParams& params, const fs::path& out_dir,
               const EngineConfig& config, std::ostream& log) {
  const SynthRegion region = make_synthetic_region(params);
  fs::create_directories(out_dir);
  nlohmann::json meta = meta_json(config);
  meta["synth"] = {{"rows", params.rows},
                   {"cols", params.cols},
                   {"districts", params.districts},
                   {"segregation", params.segregation},
                   {"seed", params.seed}};
  write_units_geojson(out_dir / "blocks.geojson", region.units, params.schema,
                      meta);
  write_districts_geojson(out_dir / "districts.geojson", region.districts, meta);
  log << "synth: " << region.units.size() << " units, "
      << region.districts.size() << " districts written to " << out_dir.string()
      << '\n';
}

}  // namespace mapens
