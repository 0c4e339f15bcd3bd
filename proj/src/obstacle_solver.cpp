#include "l1obstacle/obstacle_solver.hpp"

#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace l1obstacle {

void ObstacleProblem::validate() const {
  const auto& s = phi.spec();
  require_same_spec(s, bc.spec(), "ObstacleProblem");
  if (source) require_same_spec(s, source->spec(), "ObstacleProblem source");
  if (!phi.all_finite()) throw std::invalid_argument("ObstacleProblem: obstacle is not finite");
  const auto& g = bc.values();
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s.is_boundary_index(k) && g[k] < phi[k])
      throw std::invalid_argument("ObstacleProblem: boundary data lies below the obstacle");
}

void SolverParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("SolverParams: mu must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("SolverParams: lambda must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverParams: tol must be positive");
  if (max_outer < 1) throw std::invalid_argument("SolverParams: max_outer must be >= 1");
  cg.validate();
}

KktResiduals kkt_residuals(const ObstacleProblem& p, const GridFunction& u) {
  const auto& s = p.spec();
  require_same_spec(s, u.spec(), "kkt_residuals");
  const GridFunction lap = laplacian(u, p.bc);
  KktResiduals r;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    r.feasibility = std::max(r.feasibility, p.phi[k] - u[k]);
    if (s.is_boundary_index(k)) continue;
    const double f = p.source ? (*p.source)[k] : 0.0;
    r.subharmonicity = std::max(r.subharmonicity, lap[k] + f);
    r.complementarity = std::max(r.complementarity, std::abs(std::min(u[k] - p.phi[k], -lap[k] - f)));
  }
  return r;
}

double obstacle_energy(const ObstacleProblem& p, const GridFunction& u, double mu) {
  const auto& s = p.spec();
  double pointwise = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s.is_boundary_index(k)) continue;
    if (p.source) pointwise -= (*p.source)[k] * u[k];
    pointwise += mu * std::max(p.phi[k] - u[k], 0.0);
  }
  return dirichlet_energy(u) + s.cell_volume() * pointwise;
}

SolveReport solve_linear_obstacle(const ObstacleProblem& p, const SolverParams& params,
                                  const std::optional<GridFunction>& u0,
                                  const IterationObserver& observer) {
  p.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& s = p.spec();
  const GridFunction interior = interior_mask(s);
  const Eigen::VectorXd& phi = p.phi.values();
  const double lambda = params.lambda;
  const double threshold = params.mu / lambda;

  GridFunction u = u0 ? *u0 : p.phi;
  require_same_spec(s, u.spec(), "solve_linear_obstacle initial guess");
  p.bc.apply(u);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.size());
  GridFunction rhs(s);

  SolveReport rep;
  for (int it = 1; it <= params.max_outer; ++it) {
    rhs.values() = lambda * (phi - v - b);
    if (p.source) rhs.values() += p.source->values();
    CgResult cg = screened_poisson_solve(rhs, p.bc, lambda, u, params.cg);

    // v = S+(phi - u - b, mu/lambda), b += u + v - phi; both vanish on Dirichlet nodes
    v = phi - cg.u.values() - b;
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = shrink_plus(v[k], threshold);
    v = v.cwiseProduct(interior.values());
    b = (b + cg.u.values() + v - phi).cwiseProduct(interior.values());

    const double diff = linf_diff(cg.u, u);
    u = std::move(cg.u);
    rep.outer_iters = it;
    if (!u.all_finite() || !std::isfinite(diff)) {
      rep.failure = "non-finite iterate at outer iteration " + std::to_string(it);
      break;
    }
    rep.history.push_back({it, diff, obstacle_energy(p, u, params.mu)});
    if (observer) observer(it, u);
    if (!params.fixed_iterations && diff <= params.tol) {
      rep.converged = true;
      break;
    }
  }
  if (params.fixed_iterations && rep.ok()) rep.converged = rep.history.back().diff <= params.tol;

  const KktResiduals kkt = kkt_residuals(p, u);
  rep.feasibility_violation = kkt.feasibility;
  rep.subharmonicity = kkt.subharmonicity;
  rep.complementarity = kkt.complementarity;
  rep.u = std::move(u);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace l1obstacle
