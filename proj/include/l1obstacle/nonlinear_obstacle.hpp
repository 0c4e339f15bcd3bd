// Minimal-surface obstacle problem
//   min  h^d sum sqrt(1 + |grad_h u|^2) + mu (phi - u)_+
// solved by the same split-Bregman outer loop as the linear case, with the
// u-substep handled by Nesterov's accelerated gradient method.
#pragma once

#include "l1obstacle/obstacle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace l1obstacle {

struct NesterovSettings {
  double tau = 0.0;        ///< pseudo-time step, tau <= 1/L
  double lipschitz = 0.0;  ///< L, Lipschitz estimate of the substep gradient
  double inner_tol = 1e-7;
  int max_inner = 100000;
  /// Consecutive objective increases above the starting objective tolerated
  /// before the inner solve is declared divergent; 0 disables the check.
  int divergence_window = 50;

  /// tau = 1/L with L = lambda + 4d/h^2 (the spectral bound of -Delta_h, which
  /// also bounds the Hessian of the discrete surface energy) and inner_tol = tol/10.
  static NesterovSettings defaults(const GridSpec& s, double lambda, double outer_tol);

  double momentum(double lambda) const;
  void validate(double lambda) const;
};

/// h^d * sum over anchored nodes of sqrt(1 + |grad_h w|^2).
double minimal_surface_energy(const GridFunction& w);

/// L2 first variation of minimal_surface_energy,
/// -div_h(grad_h w / sqrt(1 + |grad_h w|^2)), with div_h = -(grad_h)^T.
/// Boundary values of w are taken from bc; the result vanishes on Dirichlet nodes.
GridFunction minimal_surface_gradient(const GridFunction& w, const DirichletBc& bc);

struct InnerSolveStats {
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
};

/// Writes the gradient of minimal_surface_energy at w into out (Dirichlet
/// entries zeroed) and returns the energy itself. w must already carry its
/// boundary values. Fused because the inner loop needs both every step.
double minimal_surface_gradient_into(const GridFunction& w, GridFunction& out);

/// Nesterov iteration for min_U F(U) + lambda/2 ||U - target||^2.
/// grad(w, out) writes grad F(w) into out and returns F(w); Dirichlet entries of
/// U are never touched, so U must already carry the boundary data.
template <typename GradEnergy>
InnerSolveStats nesterov_minimize(GridFunction& U, const GridFunction& target, double lambda,
                                  const NesterovSettings& nes, GradEnergy&& grad);

SolveReport solve_nonlinear_obstacle(const ObstacleProblem& p, const SolverParams& params,
                                     const NesterovSettings& nes,
                                     const std::optional<GridFunction>& u0 = std::nullopt,
                                     const IterationObserver& observer = {});

/// Penalized objective minimal_surface_energy(u) + h^d sum_interior mu (phi - u)_+.
double nonlinear_obstacle_energy(const ObstacleProblem& p, const GridFunction& u, double mu);

/// Exact constrained minimizer in 1D: the shortest polyline through the node
/// columns that stays above phi is the upper concave hull of the interior
/// obstacle samples and the two boundary values.
GridFunction taut_string_1d(const ObstacleProblem& p);

// ---------------------------------------------------------------------------

template <typename GradEnergy>
InnerSolveStats nesterov_minimize(GridFunction& U, const GridFunction& target, double lambda,
                                  const NesterovSettings& nes, GradEnergy&& grad) {
  const auto& s = U.spec();
  require_same_spec(s, target.spec(), "nesterov_minimize");
  const double beta = nes.momentum(lambda);
  const double tau = nes.tau;
  const double half_lv = 0.5 * lambda * s.cell_volume();

  // interior flat indices, so the update loop skips Dirichlet nodes for free
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!s.is_boundary_index(k)) idx.push_back(k);

  GridFunction prev = U, w = U, g(s);
  double* u = U.values().data();
  double* up = prev.values().data();
  double* wp = w.values().data();
  const double* gp = g.values().data();
  const double* tp = target.values().data();

  InnerSolveStats st;
  double start_obj = 0.0, last = 0.0;
  int rising = 0;
  for (int it = 1; it <= nes.max_inner; ++it) {
    for (Eigen::Index k : idx) wp[k] = u[k] + beta * (u[k] - up[k]);
    const double F = grad(w, g);
    double quad = 0.0, diff = 0.0;
    for (Eigen::Index k : idx) {
      const double r = wp[k] - tp[k];
      quad += r * r;
      const double nu = wp[k] - tau * (gp[k] + lambda * r);
      diff = std::max(diff, std::abs(nu - u[k]));
      up[k] = u[k];
      u[k] = nu;
    }
    st.iterations = it;
    if (!std::isfinite(diff) || !std::isfinite(F)) {
      st.diverged = true;
      return st;
    }
    if (diff <= nes.inner_tol) {
      st.converged = true;
      return st;
    }
    // objective at the extrapolated point; persistent growth above the start is divergence
    const double obj = F + half_lv * quad;
    if (it == 1) start_obj = last = obj;
    if (nes.divergence_window > 0) {
      rising = (obj > last && obj > start_obj) ? rising + 1 : 0;
      last = obj;
      if (rising >= nes.divergence_window) {
        st.diverged = true;
        return st;
      }
    }
  }
  return st;
}

}  // namespace l1obstacle
