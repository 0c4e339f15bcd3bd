#include "l1obstacle/nonlinear_obstacle.hpp"

#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace l1obstacle {

NesterovSettings NesterovSettings::defaults(const GridSpec& s, double lambda, double outer_tol) {
  NesterovSettings nes;
  nes.lipschitz = lambda + 4.0 * s.dim() / (s.h() * s.h());
  nes.tau = 1.0 / nes.lipschitz;
  nes.inner_tol = outer_tol / 10.0;
  return nes;
}

double NesterovSettings::momentum(double lambda) const {
  const double sl = std::sqrt(lipschitz), sm = std::sqrt(lambda);
  return (sl - sm) / (sl + sm);
}

void NesterovSettings::validate(double lambda) const {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("NesterovSettings: L must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("NesterovSettings: tau must be positive");
  if (tau > 1.0 / lipschitz * (1.0 + 1e-12))
    throw std::invalid_argument("NesterovSettings: tau must not exceed 1/L");
  if (!(lambda <= lipschitz)) throw std::invalid_argument("NesterovSettings: L must be >= lambda");
  if (!(inner_tol > 0.0)) throw std::invalid_argument("NesterovSettings: inner_tol must be positive");
  if (max_inner < 1) throw std::invalid_argument("NesterovSettings: max_inner must be >= 1");
}

double minimal_surface_energy(const GridFunction& w) {
  double sum = 0.0;
  for_each_anchored_gradient(w, [&](Eigen::Index, const std::array<double, 2>& g) {
    sum += std::sqrt(1.0 + g[0] * g[0] + g[1] * g[1]);
  });
  return sum * w.spec().cell_volume();
}

double minimal_surface_gradient_into(const GridFunction& w, GridFunction& out) {
  const auto& s = w.spec();
  const double inv_h = 1.0 / s.h();
  const double* u = w.values().data();
  double* o = out.values().data();
  double sum = 0.0;
  if (s.dim() == 1) {
    const int n = s.n(0);
    o[0] = o[n - 1] = 0.0;
    double q_left = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double p = (u[i + 1] - u[i]) * inv_h;
      const double len = std::sqrt(1.0 + p * p);
      sum += len;
      const double q = p / len;
      if (i > 0) o[i] = -(q - q_left) * inv_h;
      q_left = q;
    }
    return sum * s.cell_volume();
  }
  const int n0 = s.n(0), n1 = s.n(1);
  // flux of the previous row and of the current row (y-component lags by one node)
  thread_local std::vector<double> qx_prev, qx_cur;
  qx_prev.assign(static_cast<std::size_t>(n1), 0.0);
  qx_cur.assign(static_cast<std::size_t>(n1), 0.0);
  for (int j = 0; j < n1; ++j) o[j] = o[static_cast<Eigen::Index>(n0 - 1) * n1 + j] = 0.0;
  for (int i = 0; i + 1 < n0; ++i) {
    const double* r = u + static_cast<Eigen::Index>(i) * n1;
    const double* rn = r + n1;
    double* orow = o + static_cast<Eigen::Index>(i) * n1;
    double qy_left = 0.0;
    for (int j = 0; j + 1 < n1; ++j) {
      const double px = (rn[j] - r[j]) * inv_h;
      const double py = (r[j + 1] - r[j]) * inv_h;
      const double len = std::sqrt(1.0 + px * px + py * py);
      sum += len;
      const double qx = px / len, qy = py / len;
      if (i > 0 && j > 0) orow[j] = -((qx - qx_prev[j]) + (qy - qy_left)) * inv_h;
      qx_cur[j] = qx;
      qy_left = qy;
    }
    if (i > 0) orow[0] = orow[n1 - 1] = 0.0;
    std::swap(qx_prev, qx_cur);
  }
  return sum * s.cell_volume();
}

GridFunction minimal_surface_gradient(const GridFunction& w, const DirichletBc& bc) {
  require_same_spec(w.spec(), bc.spec(), "minimal_surface_gradient");
  GridFunction u = w;
  bc.apply(u);
  GridFunction out(w.spec());
  minimal_surface_gradient_into(u, out);
  return out;
}

double nonlinear_obstacle_energy(const ObstacleProblem& p, const GridFunction& u, double mu) {
  const auto& s = p.spec();
  double pen = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s.is_boundary_index(k)) continue;
    if (p.source) pen -= (*p.source)[k] * u[k];
    pen += mu * std::max(p.phi[k] - u[k], 0.0);
  }
  return minimal_surface_energy(u) + s.cell_volume() * pen;
}

GridFunction taut_string_1d(const ObstacleProblem& p) {
  p.validate();
  const auto& s = p.spec();
  if (s.dim() != 1) throw std::invalid_argument("taut_string_1d: 1D grid required");
  const int n = s.n(0);
  auto value = [&](int i) { return (i == 0 || i == n - 1) ? p.bc.value(i) : p.phi[i]; };
  // monotone chain on node indices; x is uniform so index space suffices
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double cross = (b - a) * (value(i) - value(a)) - (value(b) - value(a)) * (i - a);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  GridFunction u(s);
  for (std::size_t q = 0; q + 1 < hull.size(); ++q) {
    const int a = hull[q], b = hull[q + 1];
    for (int i = a; i <= b; ++i) u[i] = value(a) + (value(b) - value(a)) * (i - a) / double(b - a);
  }
  return u;
}

SolveReport solve_nonlinear_obstacle(const ObstacleProblem& p, const SolverParams& params,
                                     const NesterovSettings& nes,
                                     const std::optional<GridFunction>& u0,
                                     const IterationObserver& observer) {
  p.validate();
  params.validate();
  nes.validate(params.lambda);
  if (p.source) throw std::invalid_argument("solve_nonlinear_obstacle: source terms are not supported");
  const auto start = std::chrono::steady_clock::now();
  const auto& s = p.spec();
  const GridFunction interior = interior_mask(s);
  const Eigen::VectorXd& phi = p.phi.values();
  const double lambda = params.lambda;
  const double threshold = params.mu / lambda;

  GridFunction u = u0 ? *u0 : p.phi;
  require_same_spec(s, u.spec(), "solve_nonlinear_obstacle initial guess");
  p.bc.apply(u);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.size());
  GridFunction target(s);

  auto grad = [](const GridFunction& w, GridFunction& out) { return minimal_surface_gradient_into(w, out); };

  SolveReport rep;
  for (int it = 1; it <= params.max_outer; ++it) {
    target.values() = phi - v - b;
    GridFunction next = u;
    const InnerSolveStats inner = nesterov_minimize(next, target, lambda, nes, grad);
    rep.outer_iters = it;
    if (inner.diverged) {
      rep.failure = "inner Nesterov iteration diverged at outer iteration " + std::to_string(it) +
                    " after " + std::to_string(inner.iterations) + " steps";
      break;
    }

    v = phi - next.values() - b;
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = shrink_plus(v[k], threshold);
    v = v.cwiseProduct(interior.values());
    b = (b + next.values() + v - phi).cwiseProduct(interior.values());

    const double diff = linf_diff(next, u);
    u = std::move(next);
    if (!u.all_finite() || !std::isfinite(diff)) {
      rep.failure = "non-finite iterate at outer iteration " + std::to_string(it);
      break;
    }
    rep.history.push_back({it, diff, nonlinear_obstacle_energy(p, u, params.mu)});
    if (observer) observer(it, u);
    if (!params.fixed_iterations && diff <= params.tol) {
      rep.converged = true;
      break;
    }
  }
  if (params.fixed_iterations && rep.ok() && !rep.history.empty())
    rep.converged = rep.history.back().diff <= params.tol;

  // KKT residuals with the minimal-surface operator G in place of -Delta_h
  const GridFunction G = minimal_surface_gradient(u, p.bc);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    rep.feasibility_violation = std::max(rep.feasibility_violation, phi[k] - u[k]);
    if (s.is_boundary_index(k)) continue;
    rep.subharmonicity = std::max(rep.subharmonicity, -G[k]);
    rep.complementarity = std::max(rep.complementarity, std::abs(std::min(u[k] - phi[k], G[k])));
  }
  rep.u = std::move(u);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace l1obstacle
