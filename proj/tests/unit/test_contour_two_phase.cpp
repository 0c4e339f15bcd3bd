#include "doctest.h"

#include "l1obstacle/contour.hpp"
#include "l1obstacle/obstacle_solver.hpp"
#include "l1obstacle/problems.hpp"
#include "l1obstacle/two_phase.hpp"

#include <cmath>

using namespace l1obstacle;

TEST_CASE("circle level set") {
  const auto s = GridSpec::square(-2, 2, 129);
  const auto u = GridFunction::sample(s, [](double x, double y) { return std::max(1 - x * x - y * y, 0.0); });
  const auto fb = extract_level_set(u, 1e-6);
  REQUIRE(fb.components.size() == 1);
  CHECK(fb.components[0].closed);
  CHECK(std::abs(mean_radius(fb, {0, 0}) - 1.0) <= s.h());
  CHECK(std::abs(area_radius(fb) - 1.0) <= 2 * s.h());
  for (const auto& p : fb.components[0].points) CHECK(std::abs(std::hypot(p[0], p[1]) - 1.0) <= s.h());
}

TEST_CASE("two separate blobs give two closed components") {
  const auto s = GridSpec::square(-2, 2, 81);
  const auto u = GridFunction::sample(s, [](double x, double y) {
    return std::max({0.25 - (x - 1) * (x - 1) - y * y, 0.25 - (x + 1) * (x + 1) - y * y, 0.0});
  });
  const auto fb = extract_level_set(u, 1e-9);
  CHECK(fb.components.size() == 2);
  for (const auto& c : fb.components) CHECK(c.closed);
}

TEST_CASE("saddle cells are split consistently") {
  // checkerboard of four nodes: every contour segment still pairs up
  const auto s = GridSpec::square(0, 1, 3);
  GridFunction u(s, Eigen::VectorXd{{1, -1, 1, -1, 1, -1, 1, -1, 1}});
  const auto fb = extract_level_set(u, 0.0);
  CHECK_FALSE(fb.empty());
  std::size_t total = 0;
  for (const auto& c : fb.components) {
    total += c.points.size();
    if (!c.closed) {
      // open chains start and end on the box boundary
      for (const auto& p : {c.points.front(), c.points.back()}) {
        const bool on_box = p[0] == 0 || p[0] == 1 || p[1] == 0 || p[1] == 1;
        CHECK(on_box);
      }
    }
  }
  CHECK(total == fb.vertex_count());
}

TEST_CASE("contour crossing the box edge stays open") {
  const auto s = GridSpec::square(0, 1, 33);
  const auto u = GridFunction::sample(s, [](double x, double y) { return x + 0.3 * y - 0.5; });
  const auto fb = extract_level_set(u, 0.0);
  REQUIRE(fb.components.size() == 1);
  CHECK_FALSE(fb.components[0].closed);
  for (const auto& p : fb.components[0].points) CHECK(p[0] + 0.3 * p[1] == doctest::Approx(0.5));
}

TEST_CASE("1D crossings") {
  const auto s = GridSpec::line(-1, 1, 101);
  const auto u = GridFunction::sample(s, [](double x, double) { return x; });
  const auto c = level_crossings_1d(u, 1e-6);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0]) <= s.h());
}

// ---------------------------------------------------------------------------

TEST_CASE("trivial two-phase data") {
  const auto s = GridSpec::square(0, 1, 17);
  auto p = TwoPhaseProblem::constant(s, 1.0, 1.0, DirichletBc::constant(s, 0.0));
  const auto r = solve_two_phase(p, SolverParams{1.0, 10.0, 1e-10, 1000});
  CHECK(r.converged);
  CHECK(r.u.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symmetric two-phase solve against the closed form") {
  const auto& fx = find_problem("two_phase_sym");
  const auto s = fx.grid(257);
  const auto p = std::get<TwoPhaseProblem>(fx.build(s));
  const auto r = solve_two_phase(p, SolverParams{fx.params.mu, fx.params.lambda, 1e-10, 100000});
  REQUIRE(r.converged);
  CHECK(linf_diff(r.u, evaluate_reference("two_phase_sym", s)) < 1e-3);
  // odd data, odd solution
  for (int i = 0; i < s.n(0); ++i) CHECK(r.u(i) == doctest::Approx(-r.u(s.n(0) - 1 - i)).epsilon(1e-6).scale(1e-6));
  const auto z = extract_zero_structure(r.u, 1e-8);
  CHECK(z.plus.values().sum() == z.minus.values().sum());
  CHECK((z.plus.values() + z.minus.values() + z.zero.values()).isApprox(Eigen::VectorXd::Ones(s.size())));
}

TEST_CASE("zero structure of the identity") {
  const auto s = GridSpec::line(-1, 1, 201);
  const auto z = extract_zero_structure(GridFunction::sample(s, [](double x, double) { return x; }), 1e-6);
  REQUIRE(z.upper.components.size() == 1);
  CHECK(std::abs(z.upper.components[0].points[0][0]) <= s.h());
}

TEST_CASE("scaling data and weights scales the solution") {
  const auto s = GridSpec::line(-1, 1, 129);
  auto bc = DirichletBc::from_function(s, [](double x, double) { return x < 0 ? -1.0 : 1.0; });
  auto bc2 = DirichletBc::from_function(s, [](double x, double) { return x < 0 ? -2.0 : 2.0; });
  SolverParams sp{1.0, 100.0, 1e-12, 200000};
  const auto a = solve_two_phase(TwoPhaseProblem::constant(s, 3.0, 3.0, bc), sp);
  const auto b = solve_two_phase(TwoPhaseProblem::constant(s, 6.0, 6.0, bc2), sp);
  CHECK((2.0 * a.u.values() - b.u.values()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("penalized and constrained problems agree for nonnegative sources") {
  const auto s = GridSpec::line(0, 1, 65);
  SolverParams sp{1.0, 50.0, 1e-12, 500000};
  sp.cg.rel_tol = 1e-13;
  const auto zero = penalized_vs_constrained(GridFunction(s), 2.0, sp);
  CHECK(zero.distance <= 1e-9);
  const auto f = GridFunction::sample(s, [](double x, double) { return 12.0 * std::exp(-40 * (x - 0.4) * (x - 0.4)); });
  const auto t = penalized_vs_constrained(f, 2.0, sp);
  CHECK(t.distance <= 1e-5);
  CHECK(t.penalized.u.values().maxCoeff() > 0.05);  // not trivially zero

  // f <= 0: the penalized solution stays nonpositive
  TwoPhaseProblem neg = TwoPhaseProblem::constant(s, 2.0, 2.0, DirichletBc::constant(s, 0.0));
  neg.source = GridFunction(s, (-f.values()).eval());
  const auto r = solve_two_phase(neg, sp);
  CHECK(r.u.values().maxCoeff() <= 1e-5);
}

TEST_CASE("two-phase input validation") {
  const auto s = GridSpec::line(0, 1, 9);
  auto p = TwoPhaseProblem::constant(s, 1.0, -1.0, DirichletBc::constant(s, 0.0));
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
