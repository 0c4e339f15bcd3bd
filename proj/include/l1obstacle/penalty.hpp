// Closed-form proximal maps of the L1-type penalty terms, and the discrete
// lower bound on the penalty weight that makes (phi - u)_+ an exact penalty.
#pragma once

#include "l1obstacle/grid.hpp"

#include <cmath>
#include <optional>

namespace l1obstacle {

/// One-sided soft threshold: argmin_v c * max(v, 0) + 1/2 (v - z)^2.
template <typename Scalar>
constexpr Scalar shrink_plus(Scalar z, Scalar c) {
  if (z > c) return z - c;
  if (z < Scalar(0)) return z;
  return Scalar(0);
}

/// Soft threshold: argmin_v c |v| + 1/2 (v - z)^2.
template <typename Scalar>
constexpr Scalar shrink(Scalar z, Scalar c) {
  if (z > c) return z - c;
  if (z < -c) return z + c;
  return Scalar(0);
}

/// Nodewise shrink_plus over a whole vector; c may vary per node.
template <typename Derived, typename DerivedC>
void shrink_plus_inplace(Eigen::MatrixBase<Derived>& z, const Eigen::MatrixBase<DerivedC>& c) {
  for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = shrink_plus(z[k], c[k]);
}

template <typename Derived, typename DerivedC>
void shrink_inplace(Eigen::MatrixBase<Derived>& z, const Eigen::MatrixBase<DerivedC>& c) {
  for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = shrink(z[k], c[k]);
}

struct PenaltyBound {
  double mu_min = 0.0;
  double margin = 1.05;

  double applied() const { return margin * mu_min; }
};

/// mu_min = max(0, max_interior(-Delta_h phi - f)). With f = 0 this is the
/// plain obstacle bound; a source f shifts it since the penalty then has to
/// dominate -Delta phi - f.
PenaltyBound mu_lower_bound(const GridFunction& phi, const DirichletBc& bc,
                            const std::optional<GridFunction>& source = std::nullopt,
                            double margin = 1.05);

}  // namespace l1obstacle
