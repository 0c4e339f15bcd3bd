#include "l1obstacle/acceptance.hpp"

#include "l1obstacle/harness.hpp"
#include "l1obstacle/io.hpp"
#include "l1obstacle/penalty.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace l1obstacle {

namespace {

// nominal solver tolerance the "10 tol" style thresholds refer to
constexpr double kNominalTol = 1e-6;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [x]");
  }
};

RunResult run_fixture(const std::string& id, std::function<void(EffectiveParams&)> tweak = {}) {
  const auto& p = find_problem(id);
  RunConfig c;
  c.problem = id;
  EffectiveParams e = resolve_params(p, c);
  if (tweak) tweak(e);
  return run_problem(p, e);
}

// coarse-to-fine grid search for the minimizer of a convex function on [lo, hi]
template <typename F>
double grid_argmin(F&& f, double lo, double hi) {
  double best = lo;
  for (int round = 0; round < 8; ++round) {
    const int m = 200;
    const double step = (hi - lo) / m;
    double fb = INFINITY;
    for (int k = 0; k <= m; ++k) {
      const double x = lo + k * step;
      const double fx = f(x);
      if (fx < fb) {
        fb = fx;
        best = x;
      }
    }
    lo = best - step;
    hi = best + step;
  }
  return best;
}

// ---------------------------------------------------------------------------

CriterionResult prox_oracle() {
  CriterionResult r{1, "prox oracle", false, "", 0.0};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> zd(-10.0, 10.0), cd(0.0, 5.0);
  double worst_plus = 0.0, worst_soft = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double z = zd(rng), c = cd(rng);
    const double lo = -std::abs(z) - c - 1.0, hi = std::abs(z) + c + 1.0;
    const double vp = grid_argmin([&](double v) { return c * std::max(v, 0.0) + 0.5 * (v - z) * (v - z); }, lo, hi);
    const double vs = grid_argmin([&](double v) { return c * std::abs(v) + 0.5 * (v - z) * (v - z); }, lo, hi);
    worst_plus = std::max(worst_plus, std::abs(shrink_plus(z, c) - vp));
    worst_soft = std::max(worst_soft, std::abs(shrink(z, c) - vs));
  }
  Check ck;
  ck.require(worst_plus <= 1e-4, "max |S+ - oracle| = " + fmt(worst_plus) + " <= 1e-4");
  ck.require(worst_soft <= 1e-4, "max |S - oracle| = " + fmt(worst_soft) + " <= 1e-4");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult obstacle_1d_refinement() {
  CriterionResult r{2, "1D obstacle refinement", false, "", 0.0};
  Check ck;
  for (const char* id : {"phi1_1d", "phi2_1d"}) {
    std::vector<std::pair<double, double>> pts;
    double worst_feas = 0.0, seconds = 0.0;
    std::string errs;
    for (int n : {256, 512, 1024}) {
      const RunResult rr = run_fixture(id, [n](EffectiveParams& e) {
        e.n = n;
        e.tol = 1e-11;  // the successive difference lags the true error by ~1e4 here
        e.max_outer = 400000;
      });
      worst_feas = std::max(worst_feas, rr.metric("feasibility"));
      seconds += rr.report.wall_seconds;
      pts.emplace_back(find_problem(id).grid(n).h(), rr.metric("linf_error"));
      errs += (errs.empty() ? "" : ",") + fmt(rr.metric("linf_error"));
      ck.require(rr.ok(), std::string(id) + " n=" + std::to_string(n) + " converged");
    }
    const double rate = fit_rate(pts);
    ck.require(worst_feas <= 10.0 * kNominalTol, std::string(id) + " feasibility " + fmt(worst_feas) + " <= 1e-5");
    ck.require(rate >= 0.8, std::string(id) + " errors " + errs + " rate " + fmt(rate) + " >= 0.8");
    ck.require(seconds < 5.0, std::string(id) + " time " + fmt(seconds) + " s < 5");
  }
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult hemisphere() {
  CriterionResult r{3, "hemisphere contact radius", false, "", 0.0};
  const auto& p = find_problem("hemisphere_2d");
  const RunResult rr = run_fixture("hemisphere_2d", [](EffectiveParams& e) {
    e.tol = 1e-10;
    e.max_outer = 100000;
  });
  const GridSpec s = p.grid(rr.params.n);
  const double h = s.h(), rs = hemisphere_contact_radius();
  const GridFunction& u = rr.report.u;
  const ObstacleProblem op = std::get<ObstacleProblem>(p.build(s));

  double contact = 0.0, worst = -1.0, worst_r = 0.0;
  for (int i = 1; i + 1 < s.n(0); ++i)
    for (int j = 1; j + 1 < s.n(1); ++j) {
      const double x = s.coord(0, i), y = s.coord(1, j), rad = std::hypot(x, y);
      if (rad < 1.0 && u(i, j) - op.phi(i, j) <= rr.params.eps) contact += 1.0;
      const double err = std::abs(u(i, j) - p.reference(x, y));
      if (err > worst) {
        worst = err;
        worst_r = rad;
      }
    }
  const double rc = std::sqrt(contact * h * h / M_PI);
  Check ck;
  ck.require(rr.ok(), "converged in " + std::to_string(rr.report.outer_iters) + " iterations");
  ck.require(std::abs(rc - rs) <= 2.0 * h,
             "contact radius " + fmt(rc) + " vs r* " + fmt(rs) + " (|d| " + fmt(std::abs(rc - rs)) + " <= 2h " + fmt(2 * h) + ")");
  ck.require(std::abs(worst_r - rs) <= 3.0 * h,
             "max error " + fmt(worst) + " at r " + fmt(worst_r) + " within 3h of r*");
  ck.require(rr.report.wall_seconds < 60.0, "time " + fmt(rr.report.wall_seconds) + " s < 60");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult penalty_exactness() {
  CriterionResult r{4, "exact penalty", false, "", 0.0};
  Check ck;
  for (const auto& [id, n] : {std::pair<const char*, int>{"phi1_1d", 256}, {"hemisphere_2d", 64}}) {
    const auto& p = find_problem(id);
    const GridSpec s = p.grid(n);
    const ObstacleProblem op = std::get<ObstacleProblem>(p.build(s));
    const double bound = mu_lower_bound(op.phi, op.bc, op.source).mu_min;
    std::vector<GridFunction> sols;
    for (double factor : {1.05, 2.1}) {
      SolverParams sp;
      sp.mu = factor * bound;
      sp.lambda = default_lambda(sp.mu);  // different paths to the same limit
      sp.tol = s.dim() == 1 ? 1e-12 : 1e-11;
      sp.max_outer = 2000000;
      sp.cg.rel_tol = 1e-13;
      sp.cg.max_iter = 5000;
      const SolveReport rep = solve_linear_obstacle(op, sp);
      ck.require(rep.ok() && rep.converged, std::string(id) + " mu=" + fmt(sp.mu) + " converged (" +
                                                std::to_string(rep.outer_iters) + " it)");
      sols.push_back(rep.u);
    }
    const double d = linf_diff(sols[0], sols[1]);
    ck.require(d <= 10.0 * kNominalTol, std::string(id) + " bound " + fmt(bound) + ", ||u(1.05) - u(2.1)|| = " + fmt(d) + " <= 1e-5");
  }
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

GridFunction random_bumps(const GridSpec& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(2.0, 10.0), width(0.08, 0.25), pos(0.15, 0.85);
  struct Bump {
    double a, w, cx, cy;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < 3; ++k) bumps.push_back({amp(rng), width(rng), pos(rng), pos(rng)});
  return GridFunction::sample(s, [&](double x, double y) {
    double f = 0.0;
    for (const auto& b : bumps) {
      const double dy = s.dim() == 2 ? y - b.cy : 0.0;
      f += b.a * std::exp(-((x - b.cx) * (x - b.cx) + dy * dy) / (2.0 * b.w * b.w));
    }
    return f;
  });
}

CriterionResult penalized_constrained() {
  CriterionResult r{5, "penalized vs constrained (f >= 0)", false, "", 0.0};
  Check ck;
  std::mt19937_64 rng(7);
  const double mu = 3.0;
  for (int dim : {1, 2}) {
    const GridSpec s = dim == 1 ? GridSpec::line(0.0, 1.0, 128) : GridSpec::square(0.0, 1.0, 64);
    double worst = 0.0, umax = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const GridFunction f = random_bumps(s, rng);
      SolverParams sp;
      sp.mu = mu;
      sp.lambda = 50.0;
      sp.tol = dim == 1 ? 1e-12 : 1e-11;
      sp.max_outer = 1000000;
      sp.cg.rel_tol = 1e-13;
      sp.cg.max_iter = 5000;
      const PenaltyComparison t = penalized_vs_constrained(f, mu, sp);
      ck.require(t.penalized.converged && t.constrained.converged,
                 std::to_string(dim) + "D trial " + std::to_string(trial) + " converged");
      worst = std::max(worst, t.distance);
      umax = std::max(umax, t.penalized.u.values().maxCoeff());
    }
    ck.require(worst <= 10.0 * kNominalTol,
               std::to_string(dim) + "D max distance " + fmt(worst) + " <= 1e-5 (max u " + fmt(umax) + ")");
  }
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult two_phase_1d() {
  CriterionResult r{6, "two-phase 1D", false, "", 0.0};
  Check ck;
  const RunResult sym = run_fixture("two_phase_sym", [](EffectiveParams& e) {
    e.tol = 1e-9;
    e.eps = 1e-8;
    e.max_outer = 200000;
  });
  const double h = find_problem("two_phase_sym").grid(sym.params.n).h();
  const double lo = sym.metric("zero_set_lo"), hi = sym.metric("zero_set_hi");
  ck.require(sym.ok(), "symmetric converged");
  ck.require(sym.metric("linf_error") <= 1e-2, "symmetric error " + fmt(sym.metric("linf_error")) + " <= 1e-2");
  ck.require(std::abs(lo + 0.5) <= 2 * h && std::abs(hi - 0.5) <= 2 * h,
             "zero set [" + fmt(lo) + ", " + fmt(hi) + "] vs [-0.5, 0.5] within 2h " + fmt(2 * h));

  const RunResult asym = run_fixture("two_phase_asym", [](EffectiveParams& e) {
    e.tol = 1e-9;
    e.eps = 1e-8;
    e.max_outer = 200000;
  });
  const double ha = find_problem("two_phase_asym").grid(asym.params.n).h();
  const double fb = asym.metric("free_boundary");
  ck.require(asym.ok(), "asymmetric converged");
  ck.require(asym.metric("sign_changes") == 1.0, "single sign change");
  ck.require(std::abs(fb - 0.141) <= 2 * ha,
             "free boundary " + fmt(fb) + " vs 0.141 within 2h " + fmt(2 * ha) + " (closed form " +
                 fmt(asymmetric_two_phase_crossing()) + ")");
  const double secs = sym.report.wall_seconds + asym.report.wall_seconds;
  ck.require(secs < 30.0, "time " + fmt(secs) + " s < 30");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

// largest 4-connected component of a 0/1 mask, as a mask
GridFunction largest_component(const GridFunction& m) {
  const auto& s = m.spec();
  std::vector<int> label(static_cast<std::size_t>(s.size()), -1);
  std::vector<int> sizes;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (m[k] == 0.0 || label[k] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    stack.push_back(k);
    label[k] = id;
    while (!stack.empty()) {
      const Eigen::Index q = stack.back();
      stack.pop_back();
      ++sizes[id];
      const auto [i, j] = s.multi_index(q);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int a = i + di[d], b = j + dj[d];
        if (a < 0 || b < 0 || a >= s.n(0) || b >= s.n(1)) continue;
        const Eigen::Index nb = s.index(a, b);
        if (m[nb] != 0.0 && label[nb] < 0) {
          label[nb] = id;
          stack.push_back(nb);
        }
      }
    }
  }
  GridFunction out(s);
  if (sizes.empty()) return out;
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  for (Eigen::Index k = 0; k < s.size(); ++k) out[k] = label[k] == best ? 1.0 : 0.0;
  return out;
}

CriterionResult branching() {
  CriterionResult r{7, "two-phase branch point", false, "", 0.0};
  const RunResult rr = run_fixture("two_phase_branching", [](EffectiveParams& e) {
    e.tol = 1e-9;
    e.eps = 1e-8;
  });
  const GridSpec s = rr.report.u.spec();
  const ZeroStructure z = extract_zero_structure(rr.report.u, rr.params.eps);
  const GridFunction plus = largest_component(z.plus), minus = largest_component(z.minus),
                     zero = largest_component(z.zero);
  const double zero_cells = zero.values().sum();
  const double h = s.h();
  const int rad = 5;
  // a node whose 5h disc meets all three phases
  bool found = false;
  double bx = 0, by = 0;
  for (int i = 0; i < s.n(0) && !found; ++i)
    for (int j = 0; j < s.n(1) && !found; ++j) {
      bool hp = false, hm = false, hz = false;
      for (int a = std::max(0, i - rad); a <= std::min(s.n(0) - 1, i + rad); ++a)
        for (int b = std::max(0, j - rad); b <= std::min(s.n(1) - 1, j + rad); ++b) {
          if ((a - i) * (a - i) + (b - j) * (b - j) > rad * rad) continue;
          hp = hp || plus(a, b) != 0.0;
          hm = hm || minus(a, b) != 0.0;
          hz = hz || zero(a, b) != 0.0;
        }
      if (hp && hm && hz) {
        found = true;
        bx = s.coord(0, i);
        by = s.coord(1, j);
      }
    }
  // the +eps and -eps contours both pass through that disc
  auto near = [&](const FreeBoundary& fb) {
    for (const auto& pl : fb.components)
      for (const auto& pt : pl.points)
        if (std::hypot(pt[0] - bx, pt[1] - by) <= rad * h) return true;
    return false;
  };
  Check ck;
  ck.require(rr.ok(), "converged in " + std::to_string(rr.report.outer_iters) + " iterations");
  ck.require(zero_cells >= 10.0, "zero set " + fmt(zero_cells) + " nodes >= 10");
  ck.require(found, found ? "triple point near (" + fmt(bx) + ", " + fmt(by) + ")" : "no 5h disc meets all three phases");
  ck.require(found && near(z.upper) && near(z.lower), "both interface contours reach that disc");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult nonlinear() {
  CriterionResult r{8, "minimal-surface obstacle", false, "", 0.0};
  const auto& p = find_problem("minimal_surface_osc");
  const GridSpec s = p.grid(p.params.n);
  const ObstacleProblem op = std::get<ObstacleProblem>(p.build(s));
  const double h = s.h();
  Check ck;

  // gradient operator against central differences of the energy
  {
    GridFunction w = GridFunction::sample(s, [](double x, double) { return 5.0 + 5.0 * x + 0.3 * std::sin(7.0 * x); });
    op.bc.apply(w);
    const GridFunction g = minimal_surface_gradient(w, op.bc);
    double worst = 0.0;
    for (int i = 1; i + 1 < s.n(0); i += 7) {
      GridFunction a = w, b = w;
      const double d = 1e-5;
      a[i] += d;
      b[i] -= d;
      const double fd = (minimal_surface_energy(a) - minimal_surface_energy(b)) / (2.0 * d) / h;
      worst = std::max(worst, std::abs(fd - g[i]));
    }
    worst /= g.values().cwiseAbs().maxCoeff();  // normwise relative error
    ck.require(worst <= 1e-5, "gradient vs finite differences rel " + fmt(worst) + " <= 1e-5");
  }

  // The successive-difference stop fires long before the iterate is feasible
  // (the outer ADMM contracts slowly at lambda = 5.3), so the stop is pushed
  // out of reach and the outer count fixed instead. inner_tol = 1e-9 follows
  // the same trajectory as tol/10 at a fifth of the cost.
  SolverParams sp;
  sp.mu = p.params.mu;
  sp.lambda = p.params.lambda;
  sp.tol = 1e-11;
  sp.max_outer = 75000;
  NesterovSettings nes = NesterovSettings::defaults(s, sp.lambda, sp.tol);
  nes.inner_tol = 1e-9;
  const SolveReport rep = solve_nonlinear_obstacle(op, sp, nes);
  const GridFunction& u = rep.u;
  ck.require(rep.ok(), "solver " + std::string(rep.ok() ? "ran" : rep.failure) + ", " +
                           std::to_string(rep.outer_iters) + " outer iterations, tau h^-2 = " +
                           fmt(nes.tau / (h * h)) + ", last diff " + fmt(rep.history.back().diff));
  ck.require(u[0] == 5.0 && u[s.n(0) - 1] == 10.0, "boundary values exact");
  const double feas = rep.feasibility_violation;
  ck.require(feas <= 1e-4, "feasibility " + fmt(feas) + " <= 1e-4");

  // affine on non-contact runs: |Delta_h u| <= 1e-3 max|u| h^-2 away from contact
  const double band = 1e-3 * u.values().cwiseAbs().maxCoeff() / (h * h);
  const GridFunction lap = laplacian(u, op.bc);
  auto free_node = [&](int i) { return i == 0 || i == s.n(0) - 1 || u[i] - op.phi[i] > 1e-4; };
  double worst = 0.0;
  for (int i = 1; i + 1 < s.n(0); ++i)
    if (free_node(i - 1) && free_node(i) && free_node(i + 1)) worst = std::max(worst, std::abs(lap[i]));
  ck.require(worst <= band, "max |Delta_h u| off contact " + fmt(worst) + " <= " + fmt(band));
  ck.detail << "; error vs taut string " << fmt(linf_diff(u, taut_string_1d(op)));
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

CriterionResult table1() {
  CriterionResult r{9, "Hele-Shaw radius table", false, "", 0.0};
  Check ck;
  const double R = exact_circle_radius(0.25, 1.0, std::sqrt(2.0));
  const double Rfd = radial_fd_radius(0.25, 1.0, std::sqrt(2.0));
  ck.require(std::abs(R - Rfd) <= 1e-4, "exact radius " + fmt(R) + " vs radial FD " + fmt(Rfd));
  const int ns[4] = {128, 256, 512, 1024};
  const double table_error[4] = {0.0238, 0.0124, 0.0083, 0.0044};
  std::vector<std::pair<double, double>> pts;
  std::string errs;
  for (int k = 0; k < 4; ++k) {
    // eps = 10 tol; at tol 1e-6 the contour level sits a fixed distance inside the
    // discrete front and the errors stall below n = 512
    const RunResult rr = run_fixture("hs_circles", [&](EffectiveParams& e) {
      e.n = ns[k];
      e.tol = 1e-7;
      e.eps = 1e-6;
    });
    const double err = rr.metric("radius_error");
    pts.emplace_back(find_problem("hs_circles").grid(ns[k]).h(), err);
    errs += (errs.empty() ? "" : ", ") + std::to_string(ns[k]) + ": " + fmt(err) + " (" +
            std::to_string(rr.report.outer_iters) + " it, " + fmt(rr.report.wall_seconds) + " s)";
    ck.require(rr.ok(), "n=" + std::to_string(ns[k]) + " converged");
    ck.require(err >= table_error[k] / 2.0 && err <= table_error[k] * 2.0,
               "n=" + std::to_string(ns[k]) + " error within factor 2 of " + fmt(table_error[k]));
  }
  const double rate = fit_rate(pts);
  ck.require(std::abs(rate - 0.8) <= 0.3, "errors " + errs + "; rate " + fmt(rate) + " in [0.5, 1.1]");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

std::string slurp(const std::filesystem::path& p, bool drop_wall) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (!(drop_wall && line.rfind("wall_seconds", 0) == 0)) os << line << '\n';
  return os.str();
}

CriterionResult determinism() {
  CriterionResult r{10, "determinism", false, "", 0.0};
  Check ck;
  const auto base = std::filesystem::temp_directory_path() / ("l1obstacle_det_" + std::to_string(::getpid()));
  int compared = 0;
  for (const auto& p : problem_library()) {
    RunConfig c;
    c.problem = p.id;
    c.n = p.dim == 1 ? 129 : 41;
    c.max_outer = 300;
    const EffectiveParams e = resolve_params(p, c);
    for (int rep = 0; rep < 2; ++rep) write_artifacts(run_problem(p, e), (base / p.id / std::to_string(rep)).string());
    for (const char* f : {"solution.csv", "history.csv", "boundary.csv", "report.txt"}) {
      const bool same = slurp(base / p.id / "0" / f, true) == slurp(base / p.id / "1" / f, true);
      if (!same) ck.require(false, p.id + "/" + f + " differs");
      ++compared;
    }
  }
  std::filesystem::remove_all(base);
  ck.require(ck.pass, std::to_string(compared) + " artifacts compared byte for byte (report wall time excluded)");
  r.pass = ck.pass;
  r.detail = ck.detail.str();
  return r;
}

}  // namespace

double radial_fd_radius(double t, double rK, double r0, int cells) {
  // u'(R) of the two-point problem, as a function of R
  auto slope_at_end = [&](double R) {
    const int m = cells;
    const double dr = (R - rK) / m;
    Eigen::VectorXd a(m - 1), b(m - 1), c(m - 1), d(m - 1);
    for (int i = 1; i < m; ++i) {
      const double ri = rK + i * dr, rm = ri - 0.5 * dr, rp = ri + 0.5 * dr;
      a[i - 1] = rm;
      b[i - 1] = -(rm + rp);
      c[i - 1] = rp;
      d[i - 1] = dr * dr * ri * (ri > r0 ? 1.0 : 0.0);
    }
    d[0] -= a[0] * t;  // u(rK) = t, u(R) = 0
    for (int i = 1; i < m - 1; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    Eigen::VectorXd u(m + 1);
    u[0] = t;
    u[m] = 0.0;
    u[m - 1] = d[m - 2] / b[m - 2];
    for (int i = m - 3; i >= 0; --i) u[i + 1] = (d[i] - c[i] * u[i + 2]) / b[i];
    return (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * dr);
  };
  double lo = r0 * (1.0 + 1e-9), hi = 2.0 * r0;
  while (slope_at_end(hi) < 0.0) hi *= 1.5;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (slope_at_end(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<int> acceptance_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

CriterionResult run_criterion(int id) {
  using Fn = CriterionResult (*)();
  static const Fn table[] = {prox_oracle, obstacle_1d_refinement, hemisphere, penalty_exactness, penalized_constrained,
                             two_phase_1d, branching, nonlinear, table1, determinism};
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  if (id < 1 || id > 10) {
    r.id = id;
    r.name = "unknown";
    r.detail = "no such criterion";
    return r;
  }
  try {
    r = table[id - 1]();
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << " " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << fmt(r.seconds)
     << " s) " << r.detail;
  return os.str();
}

}  // namespace l1obstacle
