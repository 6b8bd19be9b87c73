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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mapens/errors.h"
#include "mapens/metrics.h"
#include "mapens/proposal.h"
#include "oracles.h"
#include "support.h"

using namespace mapens;
using Catch::Approx;

namespace {

DistrictMap tally_map(const std::vector<std::vector<std::int64_t>>& rows) {
  auto t = std::make_shared<UnitTable>();
  t->groups = rows[0].size();
  std::vector<std::string> labels;
  std::vector<int> assignment;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t->ids.push_back("n" + std::to_string(i));
    t->counts.insert(t->counts.end(), rows[i].begin(), rows[i].end());
    labels.push_back("D" + std::to_string(i));
    assignment.push_back(static_cast<int>(i));
  }
  return DistrictMap(t, labels, assignment);
}

std::vector<std::vector<double>> as_double(
    const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
  return out;
}

MultiPolygon regular_polygon(int n, double radius) {
  MultiPolygon g;
  g.resize(1);
  for (int i = n; i >= 0; --i) {
    const double a = 2 * M_PI * (i % n) / n;
    g[0].outer().push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return normalize(g, "ngon");
}

}  // namespace

TEST_CASE("district entropy hand values") {
  const std::vector<double> one{1.0};
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> eight(8, 0.125);
  const std::vector<double> with_zero{0.0, 1.0, 0.0};
  CHECK(district_entropy(one) == 0.0);
  CHECK(district_entropy(half) == Approx(std::log(2.0)).margin(1e-12));
  CHECK(district_entropy(eight) == Approx(std::log(8.0)).margin(1e-12));
  CHECK(district_entropy(with_zero) == 0.0);
  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(district_entropy(bad), ContractError);
  const std::vector<std::int64_t> counts{3, 3};
  CHECK(count_entropy(counts) == Approx(std::log(2.0)));
  const std::vector<std::int64_t> empty{0, 0};
  CHECK(count_entropy(empty) == 0.0);
}

TEST_CASE("two-district case gives 0.3836") {
  const auto m = tally_map({{100, 0}, {50, 50}});
  const auto r = region_entropy(m);
  const double h_hat = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  CHECK(r.h_hat == Approx(h_hat).margin(1e-12));
  CHECK(r.h_per_district[0] == 0.0);
  CHECK(r.h_per_district[1] == Approx(std::log(2.0)).margin(1e-12));
  CHECK(r.h_bar == Approx(0.5 * std::log(2.0)).margin(1e-12));
  CHECK(r.index == Approx((h_hat - 0.5 * std::log(2.0)) / h_hat).margin(1e-12));
  CHECK(r.index == Approx(0.3836).margin(1e-4));
}

TEST_CASE("homogeneous is 0 and siloed is 1, exactly") {
  const auto even = tally_map({{10, 20, 30}, {1, 2, 3}, {5, 10, 15}});
  CHECK(region_entropy(even).index == 0.0);
  const auto silo = tally_map({{10, 0, 0}, {0, 7, 0}, {0, 0, 3}, {4, 0, 0}});
  CHECK(region_entropy(silo).index == 1.0);
}

TEST_CASE("literal variant leaves 1 - 1/z on an even region") {
  const auto even = tally_map({{10, 20}, {10, 20}, {10, 20}, {10, 20}});
  CHECK(region_entropy(even, Weighting::kLiteralPaper).index ==
        Approx(1.0 - 1.0 / 4.0).margin(1e-12));
  CHECK(parse_weighting(to_string(Weighting::kLiteralPaper)) ==
        Weighting::kLiteralPaper);
  CHECK_THROWS(parse_weighting("nope"));
}

TEST_CASE("single-group region is degenerate") {
  CHECK_THROWS_AS(region_entropy(tally_map({{10, 0}, {5, 0}})),
                  DegenerateRegionError);
}

TEST_CASE("index matches direct evaluation and stays in [0, 1]") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> z_dist(2, 8), k_dist(2, 8), c_dist(0, 500);
  std::bernoulli_distribution zero(0.3);
  for (int trial = 0; trial < 10000; ++trial) {
    const int z = z_dist(rng), k = k_dist(rng);
    std::vector<std::vector<std::int64_t>> rows(z, std::vector<std::int64_t>(k));
    for (auto& r : rows) {
      for (auto& c : r) c = zero(rng) ? 0 : c_dist(rng);
      if (std::accumulate(r.begin(), r.end(), std::int64_t{0}) == 0) r[0] = 1;
    }
    rows[0][0] += 1;
    rows[1][1] += 1;
    const auto r = region_entropy(tally_map(rows));
    REQUIRE(r.index >= 0.0);
    REQUIRE(r.index <= 1.0);
    REQUIRE(r.index == Approx(oracle::entropy_index(as_double(rows))).margin(1e-9));
    REQUIRE(r.index == Approx(1.0 - r.h_bar / r.h_hat).margin(1e-12));
  }
}

TEST_CASE("scale and label permutation invariance") {
  const std::vector<std::vector<std::int64_t>> rows{{3, 9, 1}, {7, 2, 5}, {0, 4, 8}};
  const auto base = region_entropy(tally_map(rows));
  auto scaled = rows;
  for (auto& r : scaled) {
    for (auto& c : r) c *= 13;
  }
  const auto s = region_entropy(tally_map(scaled));
  CHECK(s.index == Approx(base.index).margin(1e-12));
  CHECK(s.h_hat == Approx(base.h_hat).margin(1e-12));
  auto permuted = rows;
  for (auto& r : permuted) std::rotate(r.begin(), r.begin() + 1, r.end());
  CHECK(region_entropy(tally_map(permuted)).index == Approx(base.index).margin(1e-12));
}

TEST_CASE("Polsby-Popper reference shapes") {
  CHECK(polsby_popper(M_PI * 4.0, 2.0 * M_PI * 2.0) == Approx(1.0).margin(1e-15));
  CHECK(polsby_popper(regular_polygon(4096, 3.0)) == Approx(1.0).margin(1e-6));
  CHECK(polsby_popper(make_rectangle(0, 0, 2, 2)) == Approx(M_PI / 4).margin(1e-9));
  CHECK(polsby_popper(make_rectangle(0, 0, 1, 10)) ==
        Approx(4 * M_PI * 10 / (22.0 * 22.0)).margin(1e-12));
  CHECK(polsby_popper(make_rectangle(0, 0, 1, 10)) == Approx(0.2596).margin(1e-4));
  CHECK_THROWS_AS(polsby_popper(1.0, 0.0), GeometryError);
}

TEST_CASE("regular n-gon compactness rises with n") {
  double prev = 0.0;
  for (int n = 3; n <= 12; ++n) {
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(std::cos(2 * M_PI * i / n));
      ys.push_back(std::sin(2 * M_PI * i / n));
    }
    const double pp = polsby_popper(regular_polygon(n, 1.0));
    CHECK(pp == Approx(oracle::shoelace_pp(xs, ys)).margin(1e-12));
    CHECK(pp > prev);
    CHECK(pp < 1.0);
    prev = pp;
  }
}

TEST_CASE("compactness audit basics") {
  const auto grid = testing::make_grid(2, 2);
  const auto seed = grid.map({0, 1, 0, 1});
  const auto s = compactness_audit(seed, grid.graph, grid.shapes);
  CHECK(s.min_pp == Approx(4 * M_PI * 2 / 36.0));
  CHECK(compactness_passes(s, s));

  const auto one = grid.map({0, 0, 0, 0});
  const auto o = compactness_audit(one, grid.graph, grid.shapes);
  CHECK(o.min_pp == o.mean_pp);
  CHECK(o.min_pp == Approx(M_PI / 4));
}

TEST_CASE("2x2 chain between two square-pair districts passes the audit") {
  const auto grid = testing::make_grid(2, 2);
  const auto seed = grid.map({0, 1, 0, 1});
  const auto s = compactness_audit(seed, grid.graph, grid.shapes);
  std::vector<double> xs{0, 1, 1, 0}, ys{0, 0, 2, 2};
  const double domino = oracle::shoelace_pp(xs, ys);
  for (const auto& a : {std::vector<int>{0, 1, 0, 1}, std::vector<int>{0, 0, 1, 1}}) {
    const auto e = compactness_audit(grid.map(a), grid.graph, grid.shapes);
    CHECK(e.min_pp == Approx(domino).margin(1e-12));
    CHECK(compactness_passes(s, e));
  }
}

TEST_CASE("perimeter identity agrees with explicit dissolve") {
  const auto grid = testing::make_grid(6, 6);
  auto m = grid.map(testing::column_bands(grid, 3));
  std::vector<MultiPolygon> geoms;
  for (const auto& u : grid.units) geoms.push_back(u.geometry);
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    m = propose(m, grid.graph, ProposalConfig{}, rng);
    const auto fast = district_polsby_popper(m, grid.graph, grid.shapes);
    const auto shapes = dissolve_districts(m, geoms);
    std::size_t k = 0;
    for (std::size_t d = 0; d < m.district_count(); ++d) {
      if (m.district_size(static_cast<int>(d)) == 0) continue;
      CHECK(fast[k++] == Approx(polsby_popper(shapes[d])).margin(1e-12));
    }
  }
}
