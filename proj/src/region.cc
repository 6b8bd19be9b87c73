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

#include "mapens/region.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "mapens/errors.h"

namespace mapens {
namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

const nlohmann::json& features_of(const nlohmann::json& doc,
                                  const std::filesystem::path& path) {
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw IngestError(path.string() + ": not a GeoJSON FeatureCollection");
  }
  return doc["features"];
}

std::string where(const std::filesystem::path& path, std::size_t index) {
  return path.filename().string() + " feature " + std::to_string(index);
}

Ring ring_from_json(const nlohmann::json& coords, const std::string& what) {
  if (!coords.is_array()) throw IngestError(what + ": ring is not an array");
  Ring ring;
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() ||
        !pos[1].is_number()) {
      throw IngestError(what + ": bad coordinate");
    }
    bg::append(ring, Point(pos[0].get<double>(), pos[1].get<double>()));
  }
  return ring;
}

Polygon polygon_from_json(const nlohmann::json& rings, const std::string& what) {
  if (!rings.is_array() || rings.empty()) {
    throw IngestError(what + ": polygon without rings");
  }
  Polygon p;
  p.outer() = ring_from_json(rings[0], what);
  for (std::size_t i = 1; i < rings.size(); ++i) {
    p.inners().push_back(ring_from_json(rings[i], what));
  }
  return p;
}

nlohmann::json ring_to_json(const Ring& ring, bool reverse) {
  nlohmann::json out = nlohmann::json::array();
  auto emit = [&](const Point& pt) {
    out.push_back(nlohmann::json::array({pt.x(), pt.y()}));
  };
  if (reverse) {
    std::for_each(ring.rbegin(), ring.rend(), emit);
  } else {
    std::for_each(ring.begin(), ring.end(), emit);
  }
  return out;
}

std::int64_t count_property(const nlohmann::json& props, const std::string& key,
                            const std::string& what) {
  if (!props.contains(key) || props[key].is_null()) {
    throw IngestError(what + ": missing property '" + key + "'");
  }
  const auto& v = props[key];
  if (!v.is_number()) {
    throw IngestError(what + ": property '" + key + "' is not numeric");
  }
  const double d = v.get<double>();
  if (!(d >= 0.0) || std::floor(d) != d) {
    throw IngestError(what + ": property '" + key +
                      "' must be a non-negative integer");
  }
  return static_cast<std::int64_t>(d);
}

}  // namespace

GroupSchema GroupSchema::census_default() {
  return {{"White", "Black", "Asian", "AIAN", "NHPI", "Other", "TwoOrMore",
           "Hispanic"}};
}

void GroupSchema::check() const {
  if (labels.size() < 2) throw ContractError("group schema needs k >= 2");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw ContractError("group labels must be unique");
  }
}

void SpatialUnit::recompute_total() {
  total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

MultiPolygon geometry_from_geojson(const nlohmann::json& g,
                                   const std::string& what) {
  if (!g.is_object() || !g.contains("coordinates")) {
    throw IngestError(what + ": missing geometry");
  }
  const std::string type = g.value("type", "");
  MultiPolygon out;
  if (type == "Polygon") {
    out.push_back(polygon_from_json(g["coordinates"], what));
  } else if (type == "MultiPolygon") {
    for (const auto& rings : g["coordinates"]) {
      out.push_back(polygon_from_json(rings, what));
    }
  } else {
    throw IngestError(what + ": unsupported geometry type '" + type + "'");
  }
  return out;
}

nlohmann::json geometry_to_geojson(const MultiPolygon& g) {
  // Stored rings are clockwise; GeoJSON wants counter-clockwise exteriors.
  auto polygon = [](const Polygon& p) {
    nlohmann::json rings = nlohmann::json::array();
    rings.push_back(ring_to_json(p.outer(), true));
    for (const Ring& r : p.inners()) rings.push_back(ring_to_json(r, true));
    return rings;
  };
  if (g.size() == 1) {
    return {{"type", "Polygon"}, {"coordinates", polygon(g.front())}};
  }
  nlohmann::json parts = nlohmann::json::array();
  for (const Polygon& p : g) parts.push_back(polygon(p));
  return {{"type", "MultiPolygon"}, {"coordinates", parts}};
}

std::vector<SpatialUnit> read_units_geojson(const std::filesystem::path& path,
                                            const GroupSchema& schema) {
  const nlohmann::json doc = read_json(path);
  const auto& features = features_of(doc, path);
  std::vector<SpatialUnit> units;
  units.reserve(features.size());
  std::set<std::string> ids;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    const std::string what = where(path, i);
    const nlohmann::json props =
        f.contains("properties") && f["properties"].is_object()
            ? f["properties"]
            : nlohmann::json::object();
    SpatialUnit u;
    if (props.contains("id") && props["id"].is_string()) {
      u.id = props["id"].get<std::string>();
    } else if (f.contains("id") && f["id"].is_string()) {
      u.id = f["id"].get<std::string>();
    } else if (f.contains("id") && f["id"].is_number_integer()) {
      u.id = std::to_string(f["id"].get<std::int64_t>());
    } else {
      throw IngestError(what + ": missing property 'id'");
    }
    if (!ids.insert(u.id).second) {
      throw IngestError(what + ": duplicate id '" + u.id + "'");
    }
    for (const auto& label : schema.labels) {
      u.counts.push_back(count_property(props, label, what));
    }
    if (props.contains("total") && !props["total"].is_null()) {
      u.reported_total = count_property(props, "total", what);
    }
    u.recompute_total();
    u.geometry = normalize(geometry_from_geojson(f.value("geometry", nlohmann::json()),
                                                 what),
                           u.id);
    units.push_back(std::move(u));
  }
  return units;
}

std::vector<HistoricalDistrict> read_districts_geojson(
    const std::filesystem::path& path) {
  const nlohmann::json doc = read_json(path);
  const auto& features = features_of(doc, path);
  std::vector<HistoricalDistrict> out;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    const std::string what = where(path, i);
    const nlohmann::json props =
        f.contains("properties") && f["properties"].is_object()
            ? f["properties"]
            : nlohmann::json::object();
    if (!props.contains("label") || !props["label"].is_string()) {
      throw IngestError(what + ": missing property 'label'");
    }
    HistoricalDistrict d;
    d.label = props["label"].get<std::string>();
    if (!labels.insert(d.label).second) {
      throw IngestError(what + ": duplicate label '" + d.label + "'");
    }
    if (props.contains("grade") && props["grade"].is_string()) {
      const std::string g = props["grade"].get<std::string>();
      if (g == "A" || g == "a") d.grade = Grade::A;
      if (g == "B" || g == "b") d.grade = Grade::B;
      if (g == "C" || g == "c") d.grade = Grade::C;
      if (g == "D" || g == "d") d.grade = Grade::D;
    }
    d.geometry = normalize(
        geometry_from_geojson(f.value("geometry", nlohmann::json()), what),
        d.label);
    out.push_back(std::move(d));
  }
  return out;
}

void write_units_geojson(const std::filesystem::path& path,
                         const std::vector<SpatialUnit>& units,
                         const GroupSchema& schema, const nlohmann::json& meta) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& u : units) {
    nlohmann::json props = {{"id", u.id}};
    for (std::size_t j = 0; j < schema.size(); ++j) {
      props[schema.labels[j]] = u.counts.at(j);
    }
    props["total"] = u.reported_total.value_or(u.total);
    features.push_back({{"type", "Feature"},
                        {"properties", props},
                        {"geometry", geometry_to_geojson(u.geometry)}});
  }
  nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
  if (!meta.is_null()) doc["_meta"] = meta;
  std::ofstream(path) << doc.dump(1) << '\n';
}

void write_districts_geojson(const std::filesystem::path& path,
                             const std::vector<HistoricalDistrict>& districts,
                             const nlohmann::json& meta) {
  static constexpr const char* kGrades[] = {"A", "B", "C", "D"};
  nlohmann::json features = nlohmann::json::array();
  for (const auto& d : districts) {
    nlohmann::json props = {{"label", d.label}};
    props["grade"] = d.grade ? nlohmann::json(kGrades[static_cast<int>(*d.grade)])
                             : nlohmann::json(nullptr);
    features.push_back({{"type", "Feature"},
                        {"properties", props},
                        {"geometry", geometry_to_geojson(d.geometry)}});
  }
  nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
  if (!meta.is_null()) doc["_meta"] = meta;
  std::ofstream(path) << doc.dump(1) << '\n';
}

}  // namespace mapens
