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

#include "mapens/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mapens/errors.h"

namespace mapens {
namespace {

bool valid(const MultiPolygon& g, std::string& reason) {
  return bg::is_valid(g, reason);
}

// Union of every part with the running result. Overlapping or
// self-touching parts come out as one clean multipolygon.
MultiPolygon self_union(const MultiPolygon& g) {
  MultiPolygon acc;
  for (const Polygon& part : g) {
    MultiPolygon single{part};
    MultiPolygon merged;
    bg::union_(acc, single, merged);
    acc = std::move(merged);
  }
  return acc;
}

template <typename Fn>
void for_each_segment(const Ring& ring, Fn&& fn) {
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) fn(ring[i], ring[i + 1]);
}

template <typename Fn>
void for_each_segment(const MultiPolygon& g, Fn&& fn) {
  for (const Polygon& p : g) {
    for_each_segment(p.outer(), fn);
    for (const Ring& r : p.inners()) for_each_segment(r, fn);
  }
}

double collinear_overlap(const Point& p0, const Point& p1, const Point& q0,
                         const Point& q1, double tol) {
  const double dx = p1.x() - p0.x();
  const double dy = p1.y() - p0.y();
  const double len = std::hypot(dx, dy);
  if (len <= tol) return 0.0;
  auto offset = [&](const Point& q) {
    return std::abs(dx * (q.y() - p0.y()) - dy * (q.x() - p0.x())) / len;
  };
  if (offset(q0) > tol || offset(q1) > tol) return 0.0;
  auto along = [&](const Point& q) {
    return (dx * (q.x() - p0.x()) + dy * (q.y() - p0.y())) / len;
  };
  const double a = along(q0);
  const double b = along(q1);
  const double lo = std::max(0.0, std::min(a, b));
  const double hi = std::min(len, std::max(a, b));
  return std::max(0.0, hi - lo);
}

}  // namespace

MultiPolygon make_rectangle(double x0, double y0, double x1, double y1) {
  Polygon p;
  bg::append(p.outer(), Point(x0, y0));
  bg::append(p.outer(), Point(x0, y1));
  bg::append(p.outer(), Point(x1, y1));
  bg::append(p.outer(), Point(x1, y0));
  bg::append(p.outer(), Point(x0, y0));
  MultiPolygon g{p};
  bg::correct(g);
  return g;
}

double area(const MultiPolygon& g) { return bg::area(g); }

double perimeter(const MultiPolygon& g) { return bg::perimeter(g); }

MultiPolygon normalize(MultiPolygon g, std::string_view id) {
  bg::correct(g);
  std::string reason;
  if (!valid(g, reason)) {
    MultiPolygon repaired = self_union(g);
    bg::correct(repaired);
    std::string again;
    if (repaired.empty() || !valid(repaired, again)) {
      throw GeometryError("invalid geometry for '" + std::string(id) +
                          "': " + reason);
    }
    g = std::move(repaired);
  }
  if (!(bg::area(g) > 0.0)) {
    throw GeometryError("geometry for '" + std::string(id) +
                        "' has zero area");
  }
  return g;
}

double intersection_area(const MultiPolygon& a, const MultiPolygon& b) {
  if (bg::disjoint(bg::return_envelope<Box>(a), bg::return_envelope<Box>(b))) {
    return 0.0;
  }
  MultiPolygon out;
  bg::intersection(a, b, out);
  return std::max(0.0, bg::area(out));
}

double shared_boundary_length(const MultiPolygon& a, const MultiPolygon& b,
                              double tolerance) {
  double total = 0.0;
  for_each_segment(a, [&](const Point& p0, const Point& p1) {
    const double ax0 = std::min(p0.x(), p1.x()) - tolerance;
    const double ax1 = std::max(p0.x(), p1.x()) + tolerance;
    const double ay0 = std::min(p0.y(), p1.y()) - tolerance;
    const double ay1 = std::max(p0.y(), p1.y()) + tolerance;
    for_each_segment(b, [&](const Point& q0, const Point& q1) {
      if (std::max(q0.x(), q1.x()) < ax0 || std::min(q0.x(), q1.x()) > ax1 ||
          std::max(q0.y(), q1.y()) < ay0 || std::min(q0.y(), q1.y()) > ay1) {
        return;
      }
      total += collinear_overlap(p0, p1, q0, q1, tolerance);
    });
  });
  return total;
}

MultiPolygon union_all(const MultiPolygon& a, const MultiPolygon& b) {
  MultiPolygon out;
  bg::union_(a, b, out);
  return out;
}

}  // namespace mapens
