#include "l1obstacle/two_phase.hpp"

#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace l1obstacle {

TwoPhaseProblem TwoPhaseProblem::constant(const GridSpec& s, double mu1, double mu2, DirichletBc bc) {
  return {GridFunction(s, mu1), GridFunction(s, mu2), std::move(bc), std::nullopt};
}

void TwoPhaseProblem::validate() const {
  const auto& s = spec();
  require_same_spec(s, mu2.spec(), "TwoPhaseProblem mu2");
  require_same_spec(s, bc.spec(), "TwoPhaseProblem bc");
  if (source) require_same_spec(s, source->spec(), "TwoPhaseProblem source");
  if (!(mu1.values().minCoeff() > 0.0) || !(mu2.values().minCoeff() > 0.0))
    throw std::invalid_argument("TwoPhaseProblem: mu1 and mu2 must be positive");
  if (!mu1.all_finite() || !mu2.all_finite()) throw std::invalid_argument("TwoPhaseProblem: non-finite weights");
}

GridFunction TwoPhaseProblem::alpha() const {
  GridFunction a(spec(), (0.5 * (mu1.values() - mu2.values())).eval());
  if (source) a.values() -= source->values();
  return a;
}

GridFunction TwoPhaseProblem::beta() const {
  return GridFunction(spec(), (0.5 * (mu1.values() + mu2.values())).eval());
}

double two_phase_energy(const TwoPhaseProblem& p, const GridFunction& u) {
  const auto& s = p.spec();
  const GridFunction a = p.alpha(), b = p.beta();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!s.is_boundary_index(k)) sum += a[k] * u[k] + b[k] * std::abs(u[k]);
  return dirichlet_energy(u) + s.cell_volume() * sum;
}

TwoPhaseResiduals two_phase_residuals(const TwoPhaseProblem& p, const GridFunction& u, double eps) {
  const auto& s = p.spec();
  const GridFunction lap = laplacian(u, p.bc);
  TwoPhaseResiduals r;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s.is_boundary_index(k)) continue;
    const double f = p.source ? (*p.source)[k] : 0.0;
    const double L = lap[k] + f;
    if (u[k] > eps)
      r.plus = std::max(r.plus, std::abs(L - p.mu1[k]));
    else if (u[k] < -eps)
      r.minus = std::max(r.minus, std::abs(L + p.mu2[k]));
    else
      r.zero_excess = std::max(r.zero_excess,
                               std::abs(L - 0.5 * (p.mu1[k] - p.mu2[k])) - 0.5 * (p.mu1[k] + p.mu2[k]));
  }
  return r;
}

SolveReport solve_two_phase(const TwoPhaseProblem& p, const SolverParams& params,
                            const std::optional<GridFunction>& u0, const IterationObserver& observer) {
  p.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& s = p.spec();
  const GridFunction interior = interior_mask(s);
  const double lambda = params.lambda;
  const Eigen::VectorXd alpha = p.alpha().values().cwiseProduct(interior.values());
  const Eigen::VectorXd thresh = p.beta().values() / lambda;

  GridFunction u = u0 ? *u0 : GridFunction(s);
  require_same_spec(s, u.spec(), "solve_two_phase initial guess");
  p.bc.apply(u);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(s.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s.size());
  GridFunction rhs(s);

  SolveReport rep;
  for (int it = 1; it <= params.max_outer; ++it) {
    rhs.values() = lambda * (v - b) - alpha;
    CgResult cg = screened_poisson_solve(rhs, p.bc, lambda, u, params.cg);

    v = cg.u.values() + b;
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = shrink(v[k], thresh[k]);
    v = v.cwiseProduct(interior.values());
    b = (b + cg.u.values() - v).cwiseProduct(interior.values());

    const double diff = linf_diff(cg.u, u);
    u = std::move(cg.u);
    rep.outer_iters = it;
    if (!u.all_finite() || !std::isfinite(diff)) {
      rep.failure = "non-finite iterate at outer iteration " + std::to_string(it);
      break;
    }
    rep.history.push_back({it, diff, two_phase_energy(p, u)});
    if (observer) observer(it, u);
    if (!params.fixed_iterations && diff <= params.tol) {
      rep.converged = true;
      break;
    }
  }
  if (params.fixed_iterations && rep.ok()) rep.converged = rep.history.back().diff <= params.tol;

  const TwoPhaseResiduals r = two_phase_residuals(p, u, 10.0 * params.tol);
  rep.diagnostics = {{"el_plus", r.plus}, {"el_minus", r.minus}, {"el_zero_excess", r.zero_excess}};
  rep.u = std::move(u);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ZeroStructure extract_zero_structure(const GridFunction& u, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("extract_zero_structure: eps must be positive");
  const auto& s = u.spec();
  ZeroStructure z{GridFunction(s), GridFunction(s), GridFunction(s), {}, {}};
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (u[k] > eps)
      z.plus[k] = 1.0;
    else if (u[k] < -eps)
      z.minus[k] = 1.0;
    else
      z.zero[k] = 1.0;
  }
  z.upper = extract_level_set(u, eps);
  z.lower = extract_level_set(u, -eps);
  return z;
}

PenaltyComparison penalized_vs_constrained(const GridFunction& f, double mu, const SolverParams& params) {
  const auto& s = f.spec();
  if (!(mu > 0.0)) throw std::invalid_argument("penalized_vs_constrained: mu must be positive");
  const DirichletBc zero = DirichletBc::constant(s, 0.0);

  TwoPhaseProblem tp = TwoPhaseProblem::constant(s, mu, mu, zero);
  tp.source = f;
  PenaltyComparison res;
  res.penalized = solve_two_phase(tp, params);
  if (!res.penalized.ok()) throw std::runtime_error("penalized_vs_constrained: penalized solve failed: " + res.penalized.failure);

  ObstacleProblem op{GridFunction(s), zero, GridFunction(s, (f.values().array() - mu).matrix().eval())};
  const PenaltyBound bound = mu_lower_bound(op.phi, op.bc, op.source);
  SolverParams cp = params;
  cp.mu = std::max(2.0 * bound.mu_min, 1.0);
  res.constrained = solve_linear_obstacle(op, cp);
  if (!res.constrained.ok())
    throw std::runtime_error("penalized_vs_constrained: constrained solve failed: " + res.constrained.failure);

  const Eigen::VectorXd up = res.constrained.u.values().cwiseMax(0.0);
  res.distance = (res.penalized.u.values() - up).cwiseAbs().maxCoeff();
  return res;
}

}  // namespace l1obstacle
