#include "l1obstacle/problems.hpp"

#include "l1obstacle/geometry.hpp"

#include <cmath>

namespace l1obstacle {

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::obstacle: return "obstacle";
    case ProblemKind::nonlinear: return "nonlinear";
    case ProblemKind::two_phase: return "two_phase";
    case ProblemKind::hele_shaw: return "hele_shaw";
  }
  return "?";
}

GridSpec NamedProblem::grid(int n) const {
  return dim == 1 ? GridSpec::line(lo, hi, n) : GridSpec::square(lo, hi, n);
}

namespace {

template <typename F>
double bisect(F&& g, double a, double b, double tol) {
  double ga = g(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    if ((gm > 0) == (ga > 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double phi1(double x) {
  if (x > 0.5) x = 1.0 - x;
  return x <= 0.25 ? 100.0 * x * x : 100.0 * x * (1.0 - x) - 12.5;
}

double u1_exact(double x) {
  if (x > 0.5) x = 1.0 - x;
  const double xt = 1.0 / (2.0 * std::sqrt(2.0));
  return x <= xt ? (100.0 - 50.0 * std::sqrt(2.0)) * x : 100.0 * x * (1.0 - x) - 12.5;
}

double phi2(double x) {
  if (x > 0.5) x = 1.0 - x;
  return x <= 0.25 ? 10.0 * std::sin(2.0 * M_PI * x) : 5.0 * std::cos(M_PI * (4.0 * x - 1.0)) + 5.0;
}

double u2_exact(double x) {
  if (x > 0.5) x = 1.0 - x;
  return x <= 0.25 ? 10.0 * std::sin(2.0 * M_PI * x) : 10.0;
}

double hemisphere_obstacle(double x, double y) {
  const double r2 = x * x + y * y;
  return r2 <= 1.0 ? std::sqrt(1.0 - r2) : -1.0;
}

double hemisphere_exact(double x, double y) {
  static const double rs = hemisphere_contact_radius();
  const double r = std::hypot(x, y);
  if (r <= rs) return std::sqrt(1.0 - r * r);
  return -rs * rs * std::log(r / 2.0) / std::sqrt(1.0 - rs * rs);
}

double planes(double x, double y) { return std::min(x + y - 2.0, 2.0 * x + 0.5 * y - 2.5); }

double phi4(double x, double y) {
  return planes(x, y) - 2.0 * std::exp(-60.0 * (x * x + y * y)) -
         1.5 * std::exp(-200.0 * ((x - 0.75) * (x - 0.75) + (y + 0.5) * (y + 0.5)));
}

double two_phase_sym_exact(double x) {
  if (x < -0.5) return -4.0 * x * x - 4.0 * x - 1.0;
  if (x > 0.5) return 4.0 * x * x - 4.0 * x + 1.0;
  return 0.0;
}

// slope at the free boundary a of the asymmetric problem, from the left piece
double asym_slope(double a) { return (1.0 - 0.5 * (1.0 + a) * (1.0 + a)) / (1.0 + a); }

double two_phase_asym_exact(double x) {
  static const double a = asymmetric_two_phase_crossing();
  const double s = asym_slope(a);
  const double d = x - a;
  return d >= 0.0 ? d * d + s * d : -0.5 * d * d + s * d;
}

double branching_bc(double x, double y) {
  // corners agree between adjacent pieces
  if (x >= 1.0 - 1e-12) return 0.0;
  if (y >= 1.0 - 1e-12) return 0.25 * (1.0 - x) * (1.0 - x);
  if (y <= -1.0 + 1e-12) return -0.25 * (1.0 - x) * (1.0 - x);
  if (x <= -1.0 + 1e-12) return y >= 0.0 ? y * y : -y * y;
  return 0.0;
}

ObstacleProblem obstacle_from(const GridSpec& s, double (*phi)(double, double), DirichletBc bc) {
  return {GridFunction::sample(s, phi), std::move(bc), std::nullopt};
}

GridFunction shapes_obstacle(const GridSpec& s) {
  GridFunction phi = GridFunction::sample(s, [](double x, double y) {
    if (std::abs(x - 0.6) + std::abs(y - 0.6) < 0.04) return 5.0;
    if ((x - 0.6) * (x - 0.6) + (y - 0.25) * (y - 0.25) < 0.001) return 4.5;
    return 0.0;
  });
  // the segment y = 0.57, 0.075 < x < 0.13 lives on the nearest node row
  const int row = static_cast<int>(std::lround((0.57 - s.lo(1)) / s.h()));
  for (int i = 0; i < s.n(0); ++i) {
    const double x = s.coord(0, i);
    if (x > 0.075 && x < 0.13 && !s.is_boundary(i, row)) phi(i, row) = 4.5;
  }
  return phi;
}

std::vector<Point> concave_blob() {
  // smooth three-lobed curve; the inward dents are concave
  std::vector<Point> v;
  const int m = 720;
  for (int k = 0; k < m; ++k) {
    const double th = 2.0 * M_PI * k / m;
    const double r = 1.2 + 0.35 * std::cos(3.0 * th);
    v.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return v;
}

std::vector<NamedProblem> make_library() {
  std::vector<NamedProblem> lib;
  auto line_bc = [](const GridSpec& s, double left, double right) {
    return DirichletBc::from_function(s, [=](double x, double) { return x < 0.5 * (s.lo(0) + s.hi(0)) ? left : right; });
  };

  {
    NamedProblem p{"phi1_1d", ProblemKind::obstacle, 1, 0.0, 1.0,
                   "1D obstacle 100x^2 / 100x(1-x)-12.5, symmetric about 1/2, zero boundary data",
                   "closed form: linear ramp up to x = 1/(2 sqrt 2), then the obstacle",
                   {256, 300.0, false, 45.0, 1e-6, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [line_bc](const GridSpec& s, double) {
      return ProblemInstance(ObstacleProblem{GridFunction::sample(s, [](double x, double) { return phi1(x); }),
                                             line_bc(s, 0.0, 0.0), std::nullopt});
    };
    p.reference = [](double x, double) { return u1_exact(x); };
    p.targets = {{"contact_start", 1.0 / (2.0 * std::sqrt(2.0))}};
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"phi2_1d", ProblemKind::obstacle, 1, 0.0, 1.0,
                   "1D obstacle 10 sin(2 pi x) / 5 cos(pi(4x-1)) + 5, symmetric about 1/2",
                   "closed form: the obstacle up to x = 1/4, then the plateau u = 10",
                   {256, 2.5e4, false, 250.0, 1e-6, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [line_bc](const GridSpec& s, double) {
      return ProblemInstance(ObstacleProblem{GridFunction::sample(s, [](double x, double) { return phi2(x); }),
                                             line_bc(s, 0.0, 0.0), std::nullopt});
    };
    p.reference = [](double x, double) { return u2_exact(x); };
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"hemisphere_2d", ProblemKind::obstacle, 2, -2.0, 2.0,
                   "hemisphere sqrt(1-r^2) on the unit disc, -1 elsewhere, on [-2,2]^2",
                   "closed form radial solution; boundary data taken from it on the square",
                   {256, 10.0, true, 20.3, 1e-6, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double) {
      return ProblemInstance(obstacle_from(s, hemisphere_obstacle, DirichletBc::from_function(s, hemisphere_exact)));
    };
    p.reference = hemisphere_exact;
    p.targets = {{"contact_radius", hemisphere_contact_radius()}};
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"shapes_2d", ProblemKind::obstacle, 2, 0.0, 1.0,
                   "disjoint shapes: a diamond at height 5, a disc and a line segment at 4.5, zero elsewhere",
                   "no reference; the segment is placed on the nearest node row",
                   {256, 6.5e5, false, 1.3e4, 5e-4, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double) {
      return ProblemInstance(ObstacleProblem{shapes_obstacle(s), DirichletBc::constant(s, 0.0), std::nullopt});
    };
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"planes_bumps_2d", ProblemKind::obstacle, 2, -1.0, 1.0,
                   "two intersecting planes with two Gaussian dents; boundary data = the planes",
                   "the solution is min of the two planes (the dents are bridged)",
                   {256, 1e5, false, 5e3, 5e-4, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double) {
      return ProblemInstance(obstacle_from(s, phi4, DirichletBc::from_function(s, planes)));
    };
    p.reference = planes;
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"minimal_surface_osc", ProblemKind::nonlinear, 1, 0.0, 1.0,
                   "minimal surface over 10 sin^2(pi (x+1)^2) with u(0) = 5, u(1) = 10",
                   "discrete reference: the upper concave hull of the obstacle samples and end points",
                   {512, 1.1e3, false, 5.3, 1e-6, 10000, 0.0, 0.5}, {}, {}, {}, {}};
    p.builder = [line_bc](const GridSpec& s, double) {
      return ProblemInstance(ObstacleProblem{GridFunction::sample(s, [](double x, double) {
                                               const double q = std::sin(M_PI * (x + 1.0) * (x + 1.0));
                                               return 10.0 * q * q;
                                             }),
                                             line_bc(s, 5.0, 10.0), std::nullopt});
    };
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"two_phase_sym", ProblemKind::two_phase, 1, -1.0, 1.0,
                   "two-phase membrane u'' = 8 chi{u>0} - 8 chi{u<0}, u(-1) = -1, u(1) = 1",
                   "closed form: -(2x+1)^2 / 0 / (2x-1)^2 with zero set [-1/2, 1/2]",
                   {512, 8.0, false, 204.8, 5e-5, 10000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [line_bc](const GridSpec& s, double) {
      return ProblemInstance(TwoPhaseProblem::constant(s, 8.0, 8.0, line_bc(s, -1.0, 1.0)));
    };
    p.reference = [](double x, double) { return two_phase_sym_exact(x); };
    p.targets = {{"zero_set_lo", -0.5}, {"zero_set_hi", 0.5}};
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"two_phase_asym", ProblemKind::two_phase, 1, -1.0, 1.0,
                   "two-phase membrane u'' = 2 chi{u>0} - chi{u<0}, u(-1) = -1, u(1) = 1",
                   "closed form with the free boundary from a scalar root; reported location 0.141",
                   {4096, 2.0, false, 3072.0, 5e-7, 100000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [line_bc](const GridSpec& s, double) {
      return ProblemInstance(TwoPhaseProblem::constant(s, 2.0, 1.0, line_bc(s, -1.0, 1.0)));
    };
    p.reference = [](double x, double) { return two_phase_asym_exact(x); };
    p.targets = {{"free_boundary", asymmetric_two_phase_crossing()}, {"free_boundary_reported", 0.141}};
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"two_phase_branching", ProblemKind::two_phase, 2, -1.0, 1.0,
                   "2D two-phase membrane, mu1 = mu2 = 1, five-piece boundary data producing a branch point",
                   "no reference; qualitative (zero set of positive area, triple junction)",
                   {256, 1.0, false, 100.0, 1e-6, 20000, 0.0, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double) {
      return ProblemInstance(TwoPhaseProblem::constant(s, 1.0, 1.0, DirichletBc::from_function(s, branching_bc)));
    };
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"hs_circles", ProblemKind::hele_shaw, 2, -5.0, 5.0,
                   "Hele-Shaw injection, K = unit disc, Omega0 = disc of radius sqrt 2, t = 0.25",
                   "exact free-boundary radius from the radial solution",
                   {256, 1.5e4, false, 150.0, 1e-6, 20000, 0.25, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double t) {
      return ProblemInstance(HeleShawSetup{rasterize(s, {Circle{{0.0, 0.0}, 1.0}}),
                                           rasterize(s, {Circle{{0.0, 0.0}, std::sqrt(2.0)}}), t});
    };
    p.targets = {{"radius", exact_circle_radius(0.25, 1.0, std::sqrt(2.0))}};
    p.exact_radius = [](double t) { return exact_circle_radius(t, 1.0, std::sqrt(2.0)); };
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"hs_pinned", ProblemKind::hele_shaw, 2, -5.0, 5.0,
                   "Hele-Shaw, Omega0 = rhombus with 60 degree vertices at (+-1.2, 0), K = disc r = 0.3, t = 0.1",
                   "approximate geometry; qualitative (boundary pinned at the acute vertices)",
                   {256, 1.5e4, false, 150.0, 1e-5, 20000, 0.1, 0.0}, {}, {}, {}, {}};
    const double a = 1.2, b = 1.2 * std::tan(M_PI / 6.0);
    p.builder = [a, b](const GridSpec& s, double t) {
      return ProblemInstance(HeleShawSetup{rasterize(s, {Circle{{0.0, 0.0}, 0.3}}),
                                           rasterize(s, {Polygon{{{-a, 0.0}, {0.0, b}, {a, 0.0}, {0.0, -b}}}}), t});
    };
    p.targets = {{"vertex_left_x", -a}, {"vertex_right_x", a}};
    lib.push_back(std::move(p));
  }
  {
    NamedProblem p{"hs_concave", ProblemKind::hele_shaw, 2, -5.0, 5.0,
                   "Hele-Shaw, Omega0 = three-lobed blob r = 1.2 + 0.35 cos(3 theta), K = disc r = 0.3, t = 0.06",
                   "approximate geometry; qualitative (front moves out and smooths)",
                   {256, 1.5e4, false, 150.0, 1e-5, 20000, 0.06, 0.0}, {}, {}, {}, {}};
    p.builder = [](const GridSpec& s, double t) {
      return ProblemInstance(HeleShawSetup{rasterize(s, {Circle{{0.0, 0.0}, 0.3}}),
                                           rasterize(s, {Polygon{concave_blob()}}), t});
    };
    lib.push_back(std::move(p));
  }
  return lib;
}

}  // namespace

const std::vector<NamedProblem>& problem_library() {
  static const std::vector<NamedProblem> lib = make_library();
  return lib;
}

const NamedProblem& find_problem(const std::string& id) {
  for (const auto& p : problem_library())
    if (p.id == id) return p;
  throw UnknownProblem("unknown problem id '" + id + "'");
}

GridFunction evaluate_reference(const std::string& id, const GridSpec& s) {
  const auto& p = find_problem(id);
  if (!p.has_reference()) throw std::invalid_argument("problem '" + id + "' has no reference solution");
  return GridFunction::sample(s, p.reference);
}

double hemisphere_contact_radius() {
  return bisect([](double r) { return r * r * (1.0 - std::log(r / 2.0)) - 1.0; }, 1e-6, 1.0, 1e-14);
}

double asymmetric_two_phase_crossing() {
  // right piece (x-a)^2 + s(x-a) must reach 1 at x = 1
  return bisect([](double a) { return (1.0 - a) * (1.0 - a) + asym_slope(a) * (1.0 - a) - 1.0; }, -0.5, 0.5, 1e-15);
}

}  // namespace l1obstacle
