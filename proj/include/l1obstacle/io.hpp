// CSV artifacts. Every floating-point value is written with 17 significant
// digits so that files round-trip exactly and can be compared byte for byte.
#pragma once

#include "l1obstacle/contour.hpp"
#include "l1obstacle/obstacle_solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace l1obstacle {

/// Header `x,value` or `x,y,value`, one node per row in flat-index order.
void write_grid_csv(std::ostream& os, const GridFunction& u);
void write_grid_csv(const std::string& path, const GridFunction& u);

/// Inverse of write_grid_csv. The grid is rebuilt from the node coordinates
/// (lo = first, hi = last coordinate on each axis). Throws std::runtime_error
/// on malformed input.
GridFunction read_grid_csv(std::istream& is);
GridFunction read_grid_csv(const std::string& path);

/// `iter,diff,energy`.
void write_history_csv(std::ostream& os, const std::vector<IterationRecord>& history);
void write_history_csv(const std::string& path, const std::vector<IterationRecord>& history);

/// `component_id,x` (dim 1) or `component_id,x,y` (dim 2), points in contour order.
void write_polylines_csv(std::ostream& os, const std::vector<Polyline>& lines, int dim);
void write_polylines_csv(const std::string& path, const std::vector<Polyline>& lines, int dim);

/// 17-significant-digit decimal form used by all writers.
std::string format_double(double v);

}  // namespace l1obstacle
