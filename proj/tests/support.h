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

#ifndef MAPENS_TESTS_SUPPORT_H_
#define MAPENS_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <unistd.h>

#include "mapens/adjacency.h"
#include "mapens/geometry.h"
#include "mapens/metrics.h"
#include "mapens/partition.h"
#include "mapens/region.h"

namespace mapens::testing {

using CountFn = std::function<std::vector<std::int64_t>(int row, int col)>;

struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<SpatialUnit> units;
  AdjacencyGraph graph;
  std::shared_ptr<const UnitTable> table;
  std::vector<UnitShape> shapes;

  int node(int r, int c) const { return r * cols + c; }

  DistrictMap map(const std::vector<int>& assignment,
                  std::vector<std::string> labels = {}) const {
    if (labels.empty()) {
      int z = 0;
      for (int a : assignment) z = std::max(z, a + 1);
      for (int d = 0; d < z; ++d) labels.push_back("D" + std::to_string(d));
    }
    return DistrictMap(table, std::move(labels), assignment);
  }
};

inline Grid make_grid(int rows, int cols, const CountFn& counts) {
  Grid g;
  g.rows = rows;
  g.cols = cols;
  auto table = std::make_shared<UnitTable>();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      SpatialUnit u;
      u.id = "u" + std::to_string(r) + "_" + std::to_string(c);
      u.geometry = make_rectangle(c, r, c + 1, r + 1);
      u.counts = counts(r, c);
      u.recompute_total();
      table->ids.push_back(u.id);
      table->groups = u.counts.size();
      table->counts.insert(table->counts.end(), u.counts.begin(), u.counts.end());
      g.shapes.push_back({1.0, 4.0});
      g.units.push_back(std::move(u));
    }
  }
  g.table = table;
  g.graph = build_adjacency(g.units);
  return g;
}

inline Grid make_grid(int rows, int cols, std::int64_t per_unit = 100,
                      std::size_t groups = 2) {
  return make_grid(rows, cols, [=](int r, int c) {
    std::vector<std::int64_t> v(groups, 0);
    v[static_cast<std::size_t>(r + c) % groups] = per_unit;
    return v;
  });
}

// Vertical bands: column c belongs to district c * z / cols.
inline std::vector<int> column_bands(const Grid& g, int z) {
  std::vector<int> a(g.units.size());
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) a[g.node(r, c)] = c * z / g.cols;
  }
  return a;
}

class TempDir {
 public:
  explicit TempDir(const std::string& stem) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mapens_" + stem + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mapens::testing

#endif  // MAPENS_TESTS_SUPPORT_H_
