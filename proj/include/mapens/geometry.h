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

#ifndef MAPENS_GEOMETRY_H_
#define MAPENS_GEOMETRY_H_

#include <string_view>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace mapens {

namespace bg = boost::geometry;

// Planar coordinates in an area-true projection. Rings are stored clockwise
// and closed, which is the Boost.Geometry default; normalize() fixes input
// that arrives in GeoJSON (counter-clockwise) order.
using Point = bg::model::d2::point_xy<double>;
using Ring = bg::model::ring<Point>;
using Polygon = bg::model::polygon<Point>;
using MultiPolygon = bg::model::multi_polygon<Polygon>;
using Box = bg::model::box<Point>;

MultiPolygon make_rectangle(double x0, double y0, double x1, double y1);

double area(const MultiPolygon& g);

// Total boundary length, interior rings included.
double perimeter(const MultiPolygon& g);

// Fixes orientation and closure, then checks validity. A self-intersecting
// shape gets one repair attempt (self-union); if that still leaves it
// invalid, or its area is not positive, throws GeometryError naming `id`.
MultiPolygon normalize(MultiPolygon g, std::string_view id);

// Exact area of a ∩ b. Both inputs must already be normalized.
double intersection_area(const MultiPolygon& a, const MultiPolygon& b);

// Length of boundary shared by a and b, i.e. the total length of collinear
// overlapping edge pieces. Corner contact contributes zero. `tolerance` is an
// absolute distance below which points count as lying on a segment.
double shared_boundary_length(const MultiPolygon& a, const MultiPolygon& b,
                              double tolerance);

MultiPolygon union_all(const MultiPolygon& a, const MultiPolygon& b);

}  // namespace mapens

#endif  // MAPENS_GEOMETRY_H_
