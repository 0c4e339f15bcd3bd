#include "l1obstacle/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace l1obstacle {

void CgSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("CgSettings: rel_tol must lie in (0,1)");
  if (max_iter < 1) throw std::invalid_argument("CgSettings: max_iter must be >= 1");
}

void apply_screened_operator(const GridSpec& s, double lambda, const Eigen::VectorXd& x,
                             Eigen::VectorXd& y) {
  const double inv_h2 = 1.0 / (s.h() * s.h());
  y.setZero(x.size());
  if (s.dim() == 1) {
    const int n = s.n(0);
    const double diag = lambda + 2.0 * inv_h2;
    for (int i = 1; i + 1 < n; ++i) y[i] = diag * x[i] - inv_h2 * (x[i - 1] + x[i + 1]);
    return;
  }
  const int n0 = s.n(0), n1 = s.n(1);
  const double diag = lambda + 4.0 * inv_h2;
  const double* xp = x.data();
  double* yp = y.data();
  for (int i = 1; i + 1 < n0; ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i) * n1;
    for (int j = 1; j + 1 < n1; ++j) {
      const Eigen::Index k = row + j;
      yp[k] = diag * xp[k] - inv_h2 * (xp[k - n1] + xp[k + n1] + xp[k - 1] + xp[k + 1]);
    }
  }
}

namespace {

// rhs at interior nodes plus the boundary contributions h^-2 * g of the
// eliminated Dirichlet neighbours; zero on boundary nodes.
Eigen::VectorXd effective_rhs(const GridFunction& rhs, const DirichletBc& bc) {
  const auto& s = rhs.spec();
  const double inv_h2 = 1.0 / (s.h() * s.h());
  const auto& g = bc.values();
  Eigen::VectorXd b = rhs.values();
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s.is_boundary_index(k)) b[k] = 0.0;
  if (s.dim() == 1) {
    const int n = s.n(0);
    b[1] += inv_h2 * g[0];
    b[n - 2] += inv_h2 * g[n - 1];
    return b;
  }
  const int n0 = s.n(0), n1 = s.n(1);
  for (int i = 1; i + 1 < n0; ++i) {
    b[s.index(i, 1)] += inv_h2 * g(i, 0);
    b[s.index(i, n1 - 2)] += inv_h2 * g(i, n1 - 1);
  }
  for (int j = 1; j + 1 < n1; ++j) {
    b[s.index(1, j)] += inv_h2 * g(0, j);
    b[s.index(n0 - 2, j)] += inv_h2 * g(n0 - 1, j);
  }
  return b;
}

// Tridiagonal elimination of (lambda + 2/h^2) u_i - (u_{i-1} + u_{i+1}) / h^2 = b_i.
Eigen::VectorXd solve_tridiagonal_1d(const GridSpec& s, double lambda, const Eigen::VectorXd& b) {
  const int n = s.n(0);
  const double inv_h2 = 1.0 / (s.h() * s.h());
  const double diag = lambda + 2.0 * inv_h2;
  const double off = -inv_h2;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd c(n);
  double denom = diag;
  x[1] = b[1] / denom;
  c[1] = off / denom;
  for (int i = 2; i + 1 < n; ++i) {
    denom = diag - off * c[i - 1];
    c[i] = off / denom;
    x[i] = (b[i] - off * x[i - 1]) / denom;
  }
  for (int i = n - 3; i >= 1; --i) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace

CgResult screened_poisson_solve(const GridFunction& rhs, const DirichletBc& bc, double lambda,
                                const GridFunction& x0, const CgSettings& settings) {
  settings.validate();
  const auto& s = rhs.spec();
  require_same_spec(s, bc.spec(), "screened_poisson_solve");
  require_same_spec(s, x0.spec(), "screened_poisson_solve");
  if (!(lambda >= 0.0)) throw std::invalid_argument("screened_poisson_solve: lambda must be >= 0");
  if (!rhs.all_finite()) throw std::invalid_argument("screened_poisson_solve: non-finite right-hand side");
  // every grid has at least two Dirichlet nodes, so lambda = 0 stays nonsingular

  const Eigen::VectorXd b = effective_rhs(rhs, bc);
  if (s.dim() == 1 && settings.direct_1d) {
    CgResult res;
    res.rhs_norm = b.norm();
    res.u = GridFunction(s, solve_tridiagonal_1d(s, lambda, b));
    Eigen::VectorXd Ax(s.size());
    apply_screened_operator(s, lambda, res.u.values(), Ax);
    res.final_residual = (b - Ax).norm();
    res.initial_residual = res.rhs_norm;
    res.converged = true;
    bc.apply(res.u);
    return res;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(s.size());
  if (settings.warm_start) {
    x = x0.values();
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s.is_boundary_index(k)) x[k] = 0.0;
  }

  CgResult res;
  res.rhs_norm = b.norm();
  Eigen::VectorXd Ap(s.size());
  apply_screened_operator(s, lambda, x, Ap);
  Eigen::VectorXd r = b - Ap;
  double rr = r.squaredNorm();
  res.initial_residual = std::sqrt(rr);
  const double target = settings.rel_tol * res.rhs_norm;

  if (res.rhs_norm == 0.0) {
    x.setZero();
    rr = 0.0;
  }
  Eigen::VectorXd p = r;
  int it = 0;
  // at least one step: a warm start already inside the tolerance would otherwise
  // come back unchanged and the outer iteration would read that as convergence
  while (it < settings.max_iter && (std::sqrt(rr) > target || (it == 0 && rr > 0.0))) {
    apply_screened_operator(s, lambda, p, Ap);
    const double alpha = rr / p.dot(Ap);
    x.noalias() += alpha * p;
    r.noalias() -= alpha * Ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
    ++it;
  }

  res.iterations = it;
  res.final_residual = std::sqrt(rr);
  res.converged = res.final_residual <= target;
  res.u = GridFunction(s, std::move(x));
  bc.apply(res.u);
  return res;
}

CgResult screened_poisson_solve(const GridFunction& rhs, const DirichletBc& bc, double lambda,
                                const CgSettings& settings) {
  CgSettings cold = settings;
  cold.warm_start = false;
  return screened_poisson_solve(rhs, bc, lambda, GridFunction(rhs.spec()), cold);
}

bool mask_strictly_inside(const GridFunction& mask) {
  const auto& s = mask.spec();
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s.is_boundary_index(k) && mask[k] != 0.0) return false;
  return true;
}

GridFunction poisson_solve_indicator(const GridFunction& mask, const DirichletBc& bc_zero,
                                     const CgSettings& settings) {
  for (Eigen::Index k = 0; k < mask.values().size(); ++k)
    if (mask[k] != 0.0 && mask[k] != 1.0)
      throw std::invalid_argument("poisson_solve_indicator: mask must take values in {0,1}");
  return screened_poisson_solve(mask, bc_zero, 0.0, settings).u;
}

}  // namespace l1obstacle
