#include "l1obstacle/hele_shaw.hpp"

#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace l1obstacle {

namespace {

bool is_indicator(const GridFunction& m) {
  return (m.values().array() == 0.0 || m.values().array() == 1.0).all();
}

}  // namespace

void HeleShawSetup::validate() const {
  const auto& s = spec();
  require_same_spec(s, omega0_mask.spec(), "HeleShawSetup");
  if (s.dim() != 2) throw std::invalid_argument("HeleShawSetup: 2D grid required");
  if (!is_indicator(k_mask) || !is_indicator(omega0_mask))
    throw std::invalid_argument("HeleShawSetup: masks must take values in {0,1}");
  if ((k_mask.values().array() > omega0_mask.values().array()).any())
    throw std::invalid_argument("HeleShawSetup: K must lie inside Omega0");
  if (!mask_strictly_inside(omega0_mask))
    throw std::invalid_argument("HeleShawSetup: Omega0 touches the box boundary");
  if (!(t >= 0.0)) throw std::invalid_argument("HeleShawSetup: t must be >= 0");
}

void DoublePenaltyParams::validate() const {
  if (!(gamma1 > 0.0 && gamma2 > 0.0)) throw std::invalid_argument("DoublePenaltyParams: gammas must be positive");
  if (!(lambda1 > 0.0 && lambda2 > 0.0)) throw std::invalid_argument("DoublePenaltyParams: lambdas must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("DoublePenaltyParams: tol must be positive");
  if (max_outer < 1) throw std::invalid_argument("DoublePenaltyParams: max_outer must be >= 1");
  cg.validate();
}

GridFunction transform_fbp_to_obstacle(const GridFunction& f, double gamma, const CgSettings& cg) {
  const auto& s = f.spec();
  const DirichletBc zero = DirichletBc::constant(s, 0.0);
  const GridFunction pot = screened_poisson_solve(f, zero, 0.0, cg).u;
  const double c = gamma / (2.0 * s.dim());
  GridFunction phi = GridFunction::sample(s, [c](double x, double y) { return -c * (x * x + y * y); });
  phi.values() -= pot.values();
  return phi;
}

GridFunction hs_base_obstacle(const HeleShawSetup& s) {
  s.validate();
  return transform_fbp_to_obstacle(s.omega0_mask, 1.0);
}

GridFunction build_hs_obstacle(const HeleShawSetup& s) {
  GridFunction phi = hs_base_obstacle(s);
  phi.values() += s.t * s.k_mask.values();
  return phi;
}

HeleShawResult solve_hele_shaw(const HeleShawSetup& setup, const DoublePenaltyParams& params,
                               const IterationObserver& observer) {
  setup.validate();
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& s = setup.spec();
  HeleShawResult res;
  res.phi0 = hs_base_obstacle(setup);
  res.phi = res.phi0;
  res.phi.values() += setup.t * setup.k_mask.values();

  const GridFunction interior = interior_mask(s);
  const Eigen::VectorXd& phi = res.phi.values();
  const Eigen::VectorXd cap = setup.t * setup.k_mask.values();
  const double l1 = params.lambda1, l2 = params.lambda2;
  const double th1 = params.gamma1 / l1, th2 = params.gamma2 / l2;
  const DirichletBc bc(res.phi0);

  GridFunction u = res.phi;
  bc.apply(u);
  const Eigen::Index N = s.size();
  Eigen::VectorXd v1 = Eigen::VectorXd::Zero(N), v2 = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(N), b2 = Eigen::VectorXd::Zero(N);
  GridFunction rhs(s);
  const double* in = interior.values().data();

  SolveReport& rep = res.report;
  for (int it = 1; it <= params.max_outer; ++it) {
    rhs.values() = l1 * (phi - v1 - b1) + l2 * (v2 + cap + b2);
    CgResult cg = screened_poisson_solve(rhs, bc, l1 + l2, u, params.cg);
    const double* w = cg.u.values().data();
    for (Eigen::Index k = 0; k < N; ++k) {
      if (in[k] == 0.0) continue;
      v1[k] = shrink_plus(phi[k] - w[k] - b1[k], th1);
      v2[k] = shrink_plus(w[k] - cap[k] - b2[k], th2);
      b1[k] += v1[k] - phi[k] + w[k];
      b2[k] += v2[k] - w[k] + cap[k];
    }
    const double diff = linf_diff(cg.u, u);
    u = std::move(cg.u);
    rep.outer_iters = it;
    if (!u.all_finite() || !std::isfinite(diff)) {
      rep.failure = "non-finite iterate at outer iteration " + std::to_string(it);
      break;
    }
    double pen = 0.0;
    for (Eigen::Index k = 0; k < N; ++k)
      if (in[k] != 0.0)
        pen += params.gamma1 * std::max(phi[k] - u[k], 0.0) + params.gamma2 * std::max(u[k] - cap[k], 0.0);
    rep.history.push_back({it, diff, dirichlet_energy(u) + s.cell_volume() * pen});
    if (observer) observer(it, u);
    if (diff <= params.tol) {
      rep.converged = true;
      break;
    }
  }

  const GridFunction lap = laplacian(u, bc);
  const double eps = 10.0 * params.tol;
  double cap_violation = 0.0, harmonic = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    rep.feasibility_violation = std::max(rep.feasibility_violation, phi[k] - u[k]);
    if (setup.k_mask[k] != 0.0) cap_violation = std::max(cap_violation, u[k] - phi[k]);
    if (in[k] != 0.0 && setup.k_mask[k] == 0.0 && u[k] - phi[k] > eps) harmonic = std::max(harmonic, std::abs(lap[k]));
  }
  rep.diagnostics = {{"cap_violation", cap_violation}, {"harmonicity", harmonic}};
  res.pressure = u;
  res.pressure.values() -= res.phi0.values();
  rep.u = std::move(u);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

FreeBoundary extract_free_boundary(const GridFunction& pressure, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("extract_free_boundary: eps must be positive");
  return extract_level_set(pressure, eps);
}

double exact_circle_radius(double t, double rK, double r0) {
  if (!(rK > 0.0 && r0 > rK)) throw std::invalid_argument("exact_circle_radius: need 0 < rK < r0");
  if (!(t >= 0.0)) throw std::invalid_argument("exact_circle_radius: t must be >= 0");
  if (t == 0.0) return r0;
  // Harmonic on [rK, r0] with u(rK) = t; u = r^2/4 + a2 ln r + b2 beyond r0 with
  // u(R) = u'(R) = 0, so a2 = -R^2/2. Matching u and u' at r0 reduces to
  //   t = (R^2 - r0^2)/2 ln(r0/rK) + (r0^2 - R^2)/4 + R^2/2 ln(R/r0) =: T(R),
  // and T is increasing for R > r0 with T(r0) = 0.
  auto T = [&](double R) {
    return 0.5 * (R * R - r0 * r0) * std::log(r0 / rK) + 0.25 * (r0 * r0 - R * R) + 0.5 * R * R * std::log(R / r0);
  };
  double lo = r0, hi = 2.0 * r0;
  for (int k = 0; T(hi) < t; ++k) {
    if (k > 60) throw std::runtime_error("exact_circle_radius: cannot bracket the radius");
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (T(mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace l1obstacle
