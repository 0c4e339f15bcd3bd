#include "doctest.h"

#include "l1obstacle/obstacle_solver.hpp"
#include "l1obstacle/penalty.hpp"
#include "l1obstacle/problems.hpp"

#include <cmath>
#include <random>

using namespace l1obstacle;

namespace {

// brute force argmin on a 1e-4 grid around z
template <typename F>
double scan_min(F&& f, double z, double c) {
  const double lo = -std::abs(z) - c - 1, hi = std::abs(z) + c + 1;
  double best = lo, fb = INFINITY;
  for (double v = lo; v <= hi; v += 1e-4)
    if (f(v) < fb) {
      fb = f(v);
      best = v;
    }
  return best;
}

}  // namespace

TEST_CASE("shrink values") {
  CHECK(shrink_plus(5.0, 2.0) == 3.0);
  CHECK(shrink_plus(-1.0, 2.0) == -1.0);
  CHECK(shrink_plus(1.0, 2.0) == 0.0);
  CHECK(shrink(3.0, 1.0) == 2.0);
  CHECK(shrink(-3.0, 1.0) == -2.0);
  CHECK(shrink(0.5, 1.0) == 0.0);
}

TEST_CASE("shrink matches a scanned minimizer") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> zd(-4, 4), cd(0, 3);
  for (int k = 0; k < 200; ++k) {
    const double z = zd(rng), c = cd(rng);
    CHECK(std::abs(shrink_plus(z, c) - scan_min([&](double v) { return c * std::max(v, 0.0) + 0.5 * (v - z) * (v - z); }, z, c)) <= 2e-4);
    CHECK(std::abs(shrink(z, c) - scan_min([&](double v) { return c * std::abs(v) + 0.5 * (v - z) * (v - z); }, z, c)) <= 2e-4);
  }
}

TEST_CASE("vectorised shrink agrees with the scalar one") {
  Eigen::VectorXd z{{-3, -0.2, 0.0, 0.4, 2.5}}, c{{1, 1, 0.5, 0.5, 1}};
  Eigen::VectorXd a = z, b = z;
  shrink_plus_inplace(a, c);
  shrink_inplace(b, c);
  for (int k = 0; k < 5; ++k) {
    CHECK(a[k] == shrink_plus(z[k], c[k]));
    CHECK(b[k] == shrink(z[k], c[k]));
  }
}

TEST_CASE("penalty lower bound") {
  const auto s = GridSpec::square(-1, 1, 33);
  CHECK(mu_lower_bound(GridFunction(s, 2.0), DirichletBc::constant(s, 2.0)).mu_min == 0.0);
  for (int n : {17, 33, 65}) {
    const auto g = GridSpec::square(-1, 1, n);
    auto phi = GridFunction::sample(g, [](double x, double y) { return -(x * x + y * y); });
    const double m = mu_lower_bound(phi, DirichletBc(phi)).mu_min;
    CHECK(std::abs(m - 4.0) <= 10 * g.h());
  }
  const auto hp = find_problem("hemisphere_2d");
  const auto g = hp.grid(64);
  const auto op = std::get<ObstacleProblem>(hp.build(g));
  CHECK(mu_lower_bound(op.phi, op.bc).mu_min >= 1.0 / (g.h() * g.h()));
}

TEST_CASE("obstacle below constant data is inactive") {
  const auto s = GridSpec::square(0, 1, 17);
  ObstacleProblem p{GridFunction(s, -1.0), DirichletBc::constant(s, 0.0), std::nullopt};
  SolverParams sp{10.0, 1.5, 1e-10, 1000};
  const auto r = solve_linear_obstacle(p, sp);
  CHECK(r.converged);
  CHECK(r.u.values().cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("kkt residuals by hand") {
  const auto s = GridSpec::line(0, 1, 11);
  auto phi = GridFunction::sample(s, [](double x, double) { return -x * x; });  // strictly superharmonic
  ObstacleProblem p{phi, DirichletBc(phi), std::nullopt};
  auto r = kkt_residuals(p, phi);
  CHECK(r.feasibility == 0.0);
  CHECK(r.subharmonicity == 0.0);
  CHECK(r.complementarity == 0.0);
  GridFunction u = phi;
  u(4) -= 0.25;
  CHECK(kkt_residuals(p, u).feasibility == doctest::Approx(0.25));
}

TEST_CASE("closed form phi1 solution has small residuals") {
  const auto& fx = find_problem("phi1_1d");
  for (int n : {129, 257}) {
    const auto s = fx.grid(n);
    const auto p = std::get<ObstacleProblem>(fx.build(s));
    const auto u = evaluate_reference("phi1_1d", s);
    const auto r = kkt_residuals(p, u);
    CHECK(r.feasibility <= 1e-12);
    // the kink at the free boundary costs O(1/h) in the second difference
    CHECK(r.complementarity * s.h() <= 200.0);
  }
}

TEST_CASE("split Bregman phi1 solve satisfies KKT and approaches the closed form") {
  const auto& fx = find_problem("phi1_1d");
  const auto s = fx.grid(257);
  const auto p = std::get<ObstacleProblem>(fx.build(s));
  SolverParams sp{fx.params.mu, fx.params.lambda, 1e-11, 400000};
  const auto r = solve_linear_obstacle(p, sp);
  REQUIRE(r.converged);
  CHECK(r.feasibility_violation <= 1e-6);
  CHECK(linf_diff(r.u, evaluate_reference("phi1_1d", s)) < 1e-3);
  // energy history is finite and the last step is below tol
  CHECK(r.history.back().diff <= 1e-11);
}

TEST_CASE("the same limit from different starting points") {
  const auto& fx = find_problem("phi2_1d");
  const auto s = fx.grid(129);
  const auto p = std::get<ObstacleProblem>(fx.build(s));
  SolverParams sp{fx.params.mu, fx.params.lambda, 1e-12, 400000};
  const auto a = solve_linear_obstacle(p, sp);
  const auto b = solve_linear_obstacle(p, sp, GridFunction(s, 30.0));
  CHECK(linf_diff(a.u, b.u) < 1e-8);
}

TEST_CASE("solver rejects bad input") {
  const auto s = GridSpec::line(0, 1, 9);
  ObstacleProblem p{GridFunction(s, 1.0), DirichletBc::constant(s, 0.0), std::nullopt};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  ObstacleProblem ok{GridFunction(s, -1.0), DirichletBc::constant(s, 0.0), std::nullopt};
  CHECK_THROWS_AS(solve_linear_obstacle(ok, SolverParams{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_linear_obstacle(ok, SolverParams{1.0, -1.0}), std::invalid_argument);
}
