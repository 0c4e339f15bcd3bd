// Geometric primitives for Hele-Shaw setups, rasterized by node membership.
#pragma once

#include "l1obstacle/contour.hpp"
#include "l1obstacle/grid.hpp"

#include <variant>
#include <vector>

namespace l1obstacle {

struct Circle {
  Point center{0.0, 0.0};
  double radius = 1.0;
};

struct Rect {
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};
};

/// Simple polygon, vertices in either orientation, implicitly closed.
struct Polygon {
  std::vector<Point> vertices;
};

using Shape = std::variant<Circle, Rect, Polygon>;

/// Closed-set membership (boundary counts as inside for circles and rects;
/// even-odd rule for polygons).
bool contains(const Shape& shape, const Point& p);

/// 0/1 mask of the union of shapes, evaluated at node positions.
GridFunction rasterize(const GridSpec& s, const std::vector<Shape>& shapes);

}  // namespace l1obstacle
