// Two-phase membrane problem
//   min  sum 1/2 |grad_h u|^2 + mu1 u_+ - mu2 u_- - f u,     u = g on the boundary,
// rewritten as alpha u + beta |u| with alpha = (mu1 - mu2)/2 - f and
// beta = (mu1 + mu2)/2, and split on v = u.
#pragma once

#include "l1obstacle/contour.hpp"
#include "l1obstacle/obstacle_solver.hpp"

namespace l1obstacle {

struct TwoPhaseProblem {
  GridFunction mu1, mu2;
  DirichletBc bc;
  std::optional<GridFunction> source;

  static TwoPhaseProblem constant(const GridSpec& s, double mu1, double mu2, DirichletBc bc);

  const GridSpec& spec() const { return mu1.spec(); }
  /// Throws on grid mismatch or a non-positive weight.
  void validate() const;
  GridFunction alpha() const;
  GridFunction beta() const;
};

/// Starts from zero in the interior with bc on the boundary, v = b = 0.
/// diagnostics: el_plus, el_minus (Euler-Lagrange residuals on u > eps and
/// u < -eps) and el_zero_excess (how far |Delta_h u + f - (mu1-mu2)/2| exceeds
/// beta on the zero set); eps = 10 tol.
SolveReport solve_two_phase(const TwoPhaseProblem& p, const SolverParams& params,
                            const std::optional<GridFunction>& u0 = std::nullopt,
                            const IterationObserver& observer = {});

double two_phase_energy(const TwoPhaseProblem& p, const GridFunction& u);

struct TwoPhaseResiduals {
  double plus = 0.0;
  double minus = 0.0;
  double zero_excess = 0.0;
};
TwoPhaseResiduals two_phase_residuals(const TwoPhaseProblem& p, const GridFunction& u, double eps);

struct ZeroStructure {
  GridFunction plus, minus, zero;  ///< 0/1 masks partitioning the nodes
  FreeBoundary upper;              ///< contour u = +eps
  FreeBoundary lower;              ///< contour u = -eps
};

ZeroStructure extract_zero_structure(const GridFunction& u, double eps);

struct PenaltyComparison {
  double distance = 0.0;  ///< ||u_penalized - (u_constrained)_+||_inf
  SolveReport penalized;
  SolveReport constrained;
};

/// Compares min 1/2|grad u|^2 - f u + mu |u| (two-phase solve, mu1 = mu2 = mu)
/// with min 1/2|grad u|^2 - (f - mu) u over u >= 0 (obstacle solve with
/// phi = 0, source f - mu, exact penalty 2 max(mu - f)). Zero boundary data.
/// Both solves share tol, max_outer, cg and lambda from params.
PenaltyComparison penalized_vs_constrained(const GridFunction& f, double mu, const SolverParams& params);

}  // namespace l1obstacle
