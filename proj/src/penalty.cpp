#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <stdexcept>

namespace l1obstacle {

PenaltyBound mu_lower_bound(const GridFunction& phi, const DirichletBc& bc,
                            const std::optional<GridFunction>& source, double margin) {
  if (!(margin >= 1.0)) throw std::invalid_argument("mu_lower_bound: margin must be >= 1");
  const auto& s = phi.spec();
  // the obstacle's own boundary values enter the stencil; bc only fixes the grid
  require_same_spec(s, bc.spec(), "mu_lower_bound");
  const GridFunction lap = laplacian(phi);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s.is_boundary_index(k)) continue;
    double r = -lap[k];
    if (source) r -= (*source)[k];
    worst = std::max(worst, r);
  }
  return {worst, margin};
}

}  // namespace l1obstacle
