// Split-Bregman solver for the classical obstacle problem
//   min  sum 1/2 |grad_h u|^2 - f u + mu (phi - u)_+     u = g on the boundary
// with the exact L1 penalty replacing the constraint u >= phi.
#pragma once

#include "l1obstacle/elliptic.hpp"
#include "l1obstacle/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace l1obstacle {

struct ObstacleProblem {
  GridFunction phi;
  DirichletBc bc;
  std::optional<GridFunction> source;  ///< f; absent means f = 0

  const GridSpec& spec() const { return phi.spec(); }
  /// Throws if the fields disagree on the grid or g < phi somewhere on the boundary.
  void validate() const;
};

struct SolverParams {
  double mu = 0.0;
  double lambda = 0.0;
  double tol = 1e-6;
  int max_outer = 10000;
  /// Run exactly max_outer iterations regardless of tol.
  bool fixed_iterations = false;
  CgSettings cg{};

  void validate() const;
};

/// Default splitting weight when only mu is given.
inline double default_lambda(double mu) { return 0.15 * mu; }

struct IterationRecord {
  int iter = 0;
  double diff = 0.0;    ///< ||u^n - u^{n-1}||_inf
  double energy = 0.0;  ///< penalized discrete objective at u^n
};

struct SolveReport {
  GridFunction u;
  int outer_iters = 0;
  std::vector<IterationRecord> history;
  bool converged = false;
  double feasibility_violation = 0.0;
  double subharmonicity = 0.0;
  double complementarity = 0.0;
  double wall_seconds = 0.0;
  /// Empty on success; otherwise why the iteration was abandoned.
  std::string failure;
  /// Problem-specific residuals (name, value) for solvers whose optimality
  /// conditions are not the obstacle KKT triple.
  std::vector<std::pair<std::string, double>> diagnostics;

  bool ok() const { return failure.empty(); }
};

/// Called after every outer iteration with the new iterate.
using IterationObserver = std::function<void(int iter, const GridFunction& u)>;

struct KktResiduals {
  double feasibility = 0.0;      ///< max (phi - u)_+
  double subharmonicity = 0.0;   ///< max interior (Delta_h u + f)_+
  double complementarity = 0.0;  ///< max interior |min(u - phi, -Delta_h u - f)|
};

KktResiduals kkt_residuals(const ObstacleProblem& p, const GridFunction& u);

/// Penalized objective h^d [sum 1/2|grad u|^2 + sum_interior (-f u + mu (phi-u)_+)].
double obstacle_energy(const ObstacleProblem& p, const GridFunction& u, double mu);

/// Runs the linear split-Bregman iteration (u-substep by CG on
/// (lambda I - Delta_h) u = lambda (phi - v - b) + f, v by one-sided shrink,
/// then the Bregman update). u0 defaults to phi with the boundary data applied.
SolveReport solve_linear_obstacle(const ObstacleProblem& p, const SolverParams& params,
                                  const std::optional<GridFunction>& u0 = std::nullopt,
                                  const IterationObserver& observer = {});

}  // namespace l1obstacle
