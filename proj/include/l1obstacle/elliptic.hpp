// Matrix-free conjugate gradient for the screened Poisson operator
// (lambda I - Delta_h) with Dirichlet nodes eliminated.
#pragma once

#include "l1obstacle/grid.hpp"

namespace l1obstacle {

struct CgSettings {
  double rel_tol = 1e-6;
  int max_iter = 50;
  bool warm_start = true;
  /// On 1D grids solve the tridiagonal system exactly instead of iterating.
  bool direct_1d = true;

  void validate() const;
};

struct CgResult {
  GridFunction u;
  int iterations = 0;
  double initial_residual = 0.0;  ///< ||r_0||_2 over interior nodes
  double final_residual = 0.0;    ///< ||r_k||_2 over interior nodes
  double rhs_norm = 0.0;          ///< ||rhs_eff||_2, Dirichlet data folded in
  bool converged = false;
};

/// y = (lambda I - Delta_h) x on interior nodes. Boundary entries of x must be
/// zero (eliminated Dirichlet nodes); boundary entries of y are set to zero.
void apply_screened_operator(const GridSpec& s, double lambda,
                             const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// Solves (lambda I - Delta_h) u = rhs at interior nodes with u = bc on the
/// boundary. x0 seeds the iteration when settings.warm_start is set. On 1D
/// grids with settings.direct_1d the system is eliminated exactly (Thomas)
/// and iterations is reported as 0.
CgResult screened_poisson_solve(const GridFunction& rhs, const DirichletBc& bc, double lambda,
                                const GridFunction& x0, const CgSettings& settings);

CgResult screened_poisson_solve(const GridFunction& rhs, const DirichletBc& bc, double lambda,
                                const CgSettings& settings);

/// Solves -Delta_h v = mask with zero Dirichlet data on the box boundary.
/// Throws if mask takes values other than 0 and 1. A mask touching the box
/// boundary is accepted; the result then depends on the box size.
GridFunction poisson_solve_indicator(const GridFunction& mask, const DirichletBc& bc_zero,
                                     const CgSettings& settings = {1e-12, 100000, false});

/// True if every nonzero of mask lies on interior nodes.
bool mask_strictly_inside(const GridFunction& mask);

}  // namespace l1obstacle
