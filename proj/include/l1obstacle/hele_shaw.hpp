// Hele-Shaw flow at a fixed time t as an obstacle problem.
//
// With phi0 = -|x|^2/(2d) - (-Delta)^{-1} chi_{Omega0} and phi = phi0 + t chi_K,
// the lifted field w = phi0 + U (U the time-integrated pressure) is the
// solution of the obstacle problem over phi with w = phi0 on the box boundary.
// It is computed with two exact penalties: gamma1 (phi - w)_+ for the obstacle
// and gamma2 (w - t chi_K)_+ for the cap, each split off with its own Bregman
// variable.
#pragma once

#include "l1obstacle/contour.hpp"
#include "l1obstacle/obstacle_solver.hpp"

namespace l1obstacle {

struct HeleShawSetup {
  GridFunction k_mask;       ///< injection slot K, 0/1
  GridFunction omega0_mask;  ///< initial fluid region, 0/1
  double t = 0.0;

  const GridSpec& spec() const { return k_mask.spec(); }
  /// Throws unless both masks are 0/1 on the same 2D grid, K lies inside
  /// Omega0, Omega0 stays off the box boundary, and t >= 0.
  void validate() const;
};

struct DoublePenaltyParams {
  double gamma1 = 1.5e4, gamma2 = 1.5e4;
  double lambda1 = 150.0, lambda2 = 150.0;
  double tol = 1e-6;
  int max_outer = 10000;
  CgSettings cg{};

  void validate() const;
};

/// -(gamma/2d)|x|^2 - (-Delta_h)^{-1} f with zero data on the box boundary.
GridFunction transform_fbp_to_obstacle(const GridFunction& f, double gamma,
                                       const CgSettings& cg = {1e-12, 100000, false});

/// phi0 = transform_fbp_to_obstacle(chi_Omega0, 1).
GridFunction hs_base_obstacle(const HeleShawSetup& s);

/// phi = phi0 + t chi_K.
GridFunction build_hs_obstacle(const HeleShawSetup& s);

struct HeleShawResult {
  SolveReport report;  ///< report.u is the lifted field w
  GridFunction phi0;
  GridFunction phi;
  GridFunction pressure;  ///< w - phi0
};

/// Double-penalty split-Bregman iteration started from w = phi.
/// report.feasibility_violation is max (phi - w)_+; diagnostics carry
/// cap_violation (max over K of w - phi) and harmonicity (max |Delta_h w| off
/// the contact set and off K).
HeleShawResult solve_hele_shaw(const HeleShawSetup& s, const DoublePenaltyParams& params,
                               const IterationObserver& observer = {});

/// Contour {pressure = eps}; mask is {pressure > eps}.
FreeBoundary extract_free_boundary(const GridFunction& pressure, double eps);

/// Radius of the fluid disc for concentric circles K = B(rK), Omega0 = B(r0).
/// Throws if t < 0 or the root cannot be bracketed.
double exact_circle_radius(double t, double rK, double r0);

}  // namespace l1obstacle
