#include "l1obstacle/contour.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace l1obstacle {

std::size_t FreeBoundary::vertex_count() const {
  std::size_t c = 0;
  for (const auto& p : components) c += p.points.size();
  return c;
}

std::vector<double> level_crossings_1d(const GridFunction& u, double level) {
  const auto& s = u.spec();
  if (s.dim() != 1) throw std::invalid_argument("level_crossings_1d: 1D grid required");
  std::vector<double> out;
  for (int i = 0; i + 1 < s.n(0); ++i) {
    const bool a = u(i) > level, b = u(i + 1) > level;
    if (a == b) continue;
    const double t = (level - u(i)) / (u(i + 1) - u(i));
    out.push_back(s.coord(0, i) + t * s.h());
  }
  return out;
}

namespace {

// Edge ids: 2k for the x-edge (i,j)-(i+1,j), 2k+1 for the y-edge (i,j)-(i,j+1).
struct Segment {
  long long e0, e1;
};

}  // namespace

FreeBoundary extract_level_set(const GridFunction& u, double level) {
  const auto& s = u.spec();
  FreeBoundary fb;
  fb.mask = GridFunction(s);
  for (Eigen::Index k = 0; k < s.size(); ++k) fb.mask[k] = u[k] > level ? 1.0 : 0.0;

  if (s.dim() == 1) {
    for (double x : level_crossings_1d(u, level)) fb.components.push_back({{{x, 0.0}}, false});
    return fb;
  }

  const int n0 = s.n(0), n1 = s.n(1);
  const double h = s.h();
  std::unordered_map<long long, Point> where;
  auto edge_point = [&](int i, int j, bool along_x) {
    const long long id = 2LL * s.index(i, j) + (along_x ? 0 : 1);
    if (!where.count(id)) {
      const double a = u(i, j);
      const double b = along_x ? u(i + 1, j) : u(i, j + 1);
      const double t = (level - a) / (b - a);
      Point p{s.coord(0, i), s.coord(1, j)};
      p[along_x ? 0 : 1] += t * h;
      where.emplace(id, p);
    }
    return id;
  };

  std::vector<Segment> segs;
  for (int i = 0; i + 1 < n0; ++i)
    for (int j = 0; j + 1 < n1; ++j) {
      // corners a=(i,j) b=(i+1,j) c=(i+1,j+1) d=(i,j+1)
      const bool in[4] = {u(i, j) > level, u(i + 1, j) > level, u(i + 1, j + 1) > level,
                          u(i, j + 1) > level};
      const int mask = in[0] | in[1] << 1 | in[2] << 2 | in[3] << 3;
      if (mask == 0 || mask == 15) continue;
      // edges e0=ab e1=bc e2=dc e3=ad
      long long e[4] = {-1, -1, -1, -1};
      if (in[0] != in[1]) e[0] = edge_point(i, j, true);
      if (in[1] != in[2]) e[1] = edge_point(i + 1, j, false);
      if (in[3] != in[2]) e[2] = edge_point(i, j + 1, true);
      if (in[0] != in[3]) e[3] = edge_point(i, j, false);
      if (mask == 5 || mask == 10) {
        const double centre = 0.25 * (u(i, j) + u(i + 1, j) + u(i + 1, j + 1) + u(i, j + 1));
        if ((centre > level) == in[0]) {  // a and c joined through the centre: cut off b and d
          segs.push_back({e[0], e[1]});
          segs.push_back({e[2], e[3]});
        } else {
          segs.push_back({e[0], e[3]});
          segs.push_back({e[1], e[2]});
        }
        continue;
      }
      long long pair[2];
      int m = 0;
      for (long long x : e)
        if (x >= 0) pair[m++] = x;
      segs.push_back({pair[0], pair[1]});
    }

  // every edge point has one or two incident segments
  std::unordered_map<long long, std::array<int, 2>> incident;
  for (int k = 0; k < static_cast<int>(segs.size()); ++k)
    for (long long e : {segs[k].e0, segs[k].e1}) {
      auto [it, fresh] = incident.try_emplace(e, std::array<int, 2>{k, -1});
      if (!fresh) it->second[1] = k;
    }

  std::vector<char> used(segs.size(), 0);
  auto other_end = [&](int seg, long long e) { return segs[seg].e0 == e ? segs[seg].e1 : segs[seg].e0; };
  auto next_seg = [&](long long e, int from) {
    const auto& inc = incident.at(e);
    const int cand = inc[0] == from ? inc[1] : inc[0];
    return (cand >= 0 && !used[cand]) ? cand : -1;
  };
  auto walk = [&](int seg, long long start) {
    // follows the chain from start through seg; returns edge ids in order
    std::vector<long long> ids{start};
    long long e = start;
    while (seg >= 0) {
      used[seg] = 1;
      e = other_end(seg, e);
      ids.push_back(e);
      seg = next_seg(e, seg);
    }
    return ids;
  };
  auto emit = [&](const std::vector<long long>& ids, bool closed) {
    Polyline pl;
    pl.closed = closed;
    const std::size_t m = closed ? ids.size() - 1 : ids.size();
    for (std::size_t q = 0; q < m; ++q) pl.points.push_back(where.at(ids[q]));
    fb.components.push_back(std::move(pl));
  };

  // open chains first, starting from their free ends in deterministic order
  for (int k = 0; k < static_cast<int>(segs.size()); ++k) {
    if (used[k]) continue;
    for (long long e : {segs[k].e0, segs[k].e1}) {
      if (incident.at(e)[1] >= 0 || used[k]) continue;
      emit(walk(k, e), false);
    }
  }
  for (int k = 0; k < static_cast<int>(segs.size()); ++k) {
    if (used[k]) continue;
    auto ids = walk(k, segs[k].e0);
    emit(ids, ids.size() > 2 && ids.front() == ids.back());
  }
  return fb;
}

double mean_radius(const FreeBoundary& fb, const Point& center) {
  double sum = 0.0;
  std::size_t m = 0;
  for (const auto& pl : fb.components)
    for (const auto& p : pl.points) {
      sum += std::hypot(p[0] - center[0], p[1] - center[1]);
      ++m;
    }
  return m ? sum / static_cast<double>(m) : std::numeric_limits<double>::quiet_NaN();
}

double area_radius(const FreeBoundary& fb) {
  const auto& s = fb.mask.spec();
  const double count = fb.mask.values().sum();
  return std::sqrt(count * s.cell_volume() / M_PI);
}

}  // namespace l1obstacle
