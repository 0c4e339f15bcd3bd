// Level-set extraction: linear-interpolation crossings in 1D, marching
// squares with edge-keyed stitching in 2D.
#pragma once

#include "l1obstacle/grid.hpp"

#include <array>
#include <vector>

namespace l1obstacle {

using Point = std::array<double, 2>;

struct Polyline {
  std::vector<Point> points;
  bool closed = false;  ///< last point connects back to the first
};

/// A level-set contour together with the node mask {u > level} it bounds.
/// In 1D every crossing is its own single-point component.
struct FreeBoundary {
  std::vector<Polyline> components;
  GridFunction mask;

  bool empty() const { return components.empty(); }
  std::size_t vertex_count() const;
};

/// Contour of u = level. Nodes with u > level count as inside; on a saddle
/// cell the cell average decides which diagonal is connected.
FreeBoundary extract_level_set(const GridFunction& u, double level);

/// 1D crossing abscissae of u = level in increasing order.
std::vector<double> level_crossings_1d(const GridFunction& u, double level);

/// Mean distance of all contour vertices from center; NaN for an empty contour.
double mean_radius(const FreeBoundary& fb, const Point& center);

/// sqrt(#inside nodes * h^2 / pi), the radius of the disc of equal area.
double area_radius(const FreeBoundary& fb);

}  // namespace l1obstacle
