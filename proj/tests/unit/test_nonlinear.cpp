#include "doctest.h"

#include "l1obstacle/nonlinear_obstacle.hpp"
#include "l1obstacle/problems.hpp"

#include <cmath>
#include <random>

using namespace l1obstacle;

TEST_CASE("planes are minimal") {
  const auto s = GridSpec::square(0, 1, 21);
  auto w = GridFunction::sample(s, [](double x, double y) { return 2 * x - 3 * y + 1; });
  const auto g = minimal_surface_gradient(w, DirichletBc(w));
  CHECK(g.values().cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("surface gradient matches finite differences of the energy") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(-1, 1);
  for (const auto& s : {GridSpec::line(0, 1, 40), GridSpec::square(0, 1, 12)}) {
    GridFunction w(s);
    for (Eigen::Index k = 0; k < s.size(); ++k) w[k] = ud(rng);
    const auto g = minimal_surface_gradient(w, DirichletBc(w));
    GridFunction fused(s);
    const double e = minimal_surface_gradient_into(w, fused);
    CHECK(e == doctest::Approx(minimal_surface_energy(w)).epsilon(1e-14));
    CHECK(linf_diff(g, fused) == 0.0);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s.is_boundary_index(k)) {
        CHECK(g[k] == 0.0);
        continue;
      }
      GridFunction a = w, b = w;
      const double d = 1e-5;
      a[k] += d;
      b[k] -= d;
      const double fd = (minimal_surface_energy(a) - minimal_surface_energy(b)) / (2 * d) / s.cell_volume();
      CHECK(fd == doctest::Approx(g[k]).epsilon(1e-5));
    }
  }
}

TEST_CASE("Nesterov on a quadratic contracts at the accelerated rate") {
  // F(w) = lt/2 |w|^2, so the substep minimizer is lambda target / (lt + lambda)
  const auto s = GridSpec::line(0, 1, 50);
  const double lambda = 1.0, lt = 99.0;
  NesterovSettings nes;
  nes.lipschitz = lambda + lt;
  nes.tau = 1.0 / nes.lipschitz;
  nes.inner_tol = 1e-300;
  nes.max_inner = 100;
  GridFunction target(s, 1.0), U(s, 0.0);
  auto quad = [&](const GridFunction& w, GridFunction& out) {
    out.values() = lt * w.values();
    for (Eigen::Index k : {Eigen::Index(0), s.size() - 1}) out[k] = 0.0;
    return 0.5 * lt * w.values().squaredNorm() * s.cell_volume();
  };
  const double fixed = lambda / (lt + lambda);
  const double e0 = std::abs(U(10) - fixed);
  nesterov_minimize(U, target, lambda, nes, quad);
  const double e100 = std::abs(U(10) - fixed);
  const double rate = std::pow(e100 / e0, 1.0 / 100);
  CHECK(rate <= 1.0 - std::sqrt(lambda / nes.lipschitz) + 1e-9);
  CHECK(U(0) == 0.0);  // Dirichlet entries untouched
}

TEST_CASE("straight line between boundary values when the obstacle is inactive") {
  const auto s = GridSpec::line(0, 1, 65);
  ObstacleProblem p{GridFunction(s, -10.0), DirichletBc::from_function(s, [](double x, double) { return x; }), std::nullopt};
  SolverParams sp{10.0, 5.0, 1e-10, 20000};
  const auto r = solve_nonlinear_obstacle(p, sp, NesterovSettings::defaults(s, sp.lambda, sp.tol), GridFunction(s));
  REQUIRE(r.ok());
  for (int i = 0; i < 65; ++i) CHECK(r.u(i) == doctest::Approx(s.coord(0, i)).epsilon(1e-7));
}

TEST_CASE("taut string is the concave majorant") {
  const auto s = GridSpec::line(0, 1, 11);
  GridFunction phi(s, Eigen::VectorXd{{0, 1, 0, 0, 3, 0, 0, 0, 1, 0, 0}});
  ObstacleProblem p{phi, DirichletBc::constant(s, 0.0), std::nullopt};
  const auto u = taut_string_1d(p);
  CHECK(u(4) == 3.0);
  CHECK(u(2) == doctest::Approx(5.0 / 3.0));  // on the chord from (1,1) to (4,3)
  CHECK(u(10) == 0.0);
  // concave and above phi
  for (int i = 1; i < 10; ++i) {
    CHECK(u(i) >= phi(i));
    CHECK(u(i - 1) - 2 * u(i) + u(i + 1) <= 1e-12);
  }
}

TEST_CASE("solver stays stable with the default step and reaches the taut string on a coarse grid") {
  const auto& fx = find_problem("minimal_surface_osc");
  const auto s = fx.grid(65);
  const auto p = std::get<ObstacleProblem>(fx.build(s));
  SolverParams sp{fx.params.mu, fx.params.lambda, 1e-10, 30000};
  const auto r = solve_nonlinear_obstacle(p, sp, NesterovSettings::defaults(s, sp.lambda, sp.tol));
  REQUIRE(r.ok());
  CHECK(r.u(0) == 5.0);
  CHECK(r.u(64) == 10.0);
  CHECK(linf_diff(r.u, taut_string_1d(p)) < 5e-2);
}

TEST_CASE("an oversized step is reported as inner divergence") {
  // gentle slopes, so the surface Hessian is close to -Delta_h and the step really is too long
  const auto s = GridSpec::line(0, 1, 129);
  ObstacleProblem p{GridFunction(s, -10.0), DirichletBc::from_function(s, [](double x, double) { return x; }), std::nullopt};
  SolverParams sp{10.0, 5.0, 1e-8, 50};
  NesterovSettings nes = NesterovSettings::defaults(s, sp.lambda, sp.tol);
  nes.lipschitz = sp.lambda + 0.2 / (s.h() * s.h());
  nes.tau = 1.0 / nes.lipschitz;
  GridFunction rough(s);
  for (int i = 0; i < 129; ++i) rough(i) = (i % 2) * 0.01;
  const auto r = solve_nonlinear_obstacle(p, sp, nes, rough);
  CHECK_FALSE(r.ok());
  CHECK(r.failure.find("diverged") != std::string::npos);
}

TEST_CASE("settings validation") {
  const auto s = GridSpec::line(0, 1, 33);
  auto nes = NesterovSettings::defaults(s, 5.0, 1e-6);
  CHECK_NOTHROW(nes.validate(5.0));
  CHECK(nes.lipschitz == doctest::Approx(5.0 + 4.0 / (s.h() * s.h())));
  nes.tau *= 2;
  CHECK_THROWS_AS(nes.validate(5.0), std::invalid_argument);
}
