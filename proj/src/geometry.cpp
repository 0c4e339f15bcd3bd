#include "l1obstacle/geometry.hpp"

#include <stdexcept>

namespace l1obstacle {

namespace {

bool in_polygon(const std::vector<Point>& v, const Point& p) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool straddles = (v[i][1] > p[1]) != (v[j][1] > p[1]);
    if (straddles) {
      const double x = v[j][0] + (p[1] - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
      if (p[0] < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

bool contains(const Shape& shape, const Point& p) {
  if (const auto* c = std::get_if<Circle>(&shape)) {
    const double dx = p[0] - c->center[0], dy = p[1] - c->center[1];
    return dx * dx + dy * dy <= c->radius * c->radius;
  }
  if (const auto* r = std::get_if<Rect>(&shape))
    return p[0] >= r->lo[0] && p[0] <= r->hi[0] && p[1] >= r->lo[1] && p[1] <= r->hi[1];
  const auto& poly = std::get<Polygon>(shape);
  if (poly.vertices.size() < 3) throw std::invalid_argument("Polygon: need at least 3 vertices");
  return in_polygon(poly.vertices, p);
}

GridFunction rasterize(const GridSpec& s, const std::vector<Shape>& shapes) {
  if (s.dim() != 2) throw std::invalid_argument("rasterize: 2D grid required");
  return GridFunction::sample(s, [&](double x, double y) {
    for (const auto& sh : shapes)
      if (contains(sh, {x, y})) return 1.0;
    return 0.0;
  });
}

}  // namespace l1obstacle
