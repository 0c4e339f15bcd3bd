#include "doctest.h"

#include "l1obstacle/elliptic.hpp"
#include "l1obstacle/grid.hpp"

#include <cmath>
#include <random>

using namespace l1obstacle;

TEST_CASE("forward gradient of samples") {
  const auto s = GridSpec::line(0.0, 2.0, 3);  // h = 1
  GridFunction u(s, Eigen::VectorXd{{0.0, 1.0, 2.0}});
  const auto g = gradient_forward(u);
  REQUIRE(g.size() == 1);
  for (int i = 0; i < 3; ++i) CHECK(g[0](i) == doctest::Approx(1.0));

  const auto sq = GridSpec::square(0.0, 1.0, 9);
  const auto gc = gradient_forward(GridFunction(sq, 3.0));
  CHECK(gc[0].values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(gc[1].values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian stencil") {
  SUBCASE("affine is harmonic") {
    const auto s = GridSpec::line(0.0, 1.0, 17);
    const auto u = GridFunction::sample(s, [](double x, double) { return 3.0 * x - 1.0; });
    const auto lap = laplacian(u, DirichletBc::from_function(s, [](double x, double) { return 3.0 * x - 1.0; }));
    CHECK(lap.values().cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("hat") {
    const auto s = GridSpec::line(0.0, 2.0, 3);
    GridFunction u(s, Eigen::VectorXd{{0.0, 1.0, 0.0}});
    CHECK(laplacian(u)(1) == doctest::Approx(-2.0));
  }
  SUBCASE("exact on quadratics") {
    const auto s = GridSpec::square(-1.0, 1.0, 65);
    auto q = [](double x, double y) { return x * x + y * y; };
    const auto lap = laplacian(GridFunction::sample(s, q));
    for (int i = 1; i < 64; ++i)
      for (int j = 1; j < 64; ++j) REQUIRE(lap(i, j) == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("summation by parts: -<Lap u, v> = <grad u, grad v> for zero boundary data") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (const auto& s : {GridSpec::line(0.0, 1.0, 31), GridSpec::square(0.0, 1.0, 21)}) {
    GridFunction u(s), v(s);
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (!s.is_boundary_index(k)) {
        u[k] = nd(rng);
        v[k] = nd(rng);
      }
    const auto lap = laplacian(u);
    const double lhs = -lap.values().dot(v.values());
    double rhs = 0.0;
    const auto gu = gradient_forward(u), gv = gradient_forward(v);
    // anchored faces: node (i,j) owns the face to (i+1,j) and to (i,j+1)
    for (int i = 0; i < s.n(0); ++i)
      for (int j = 0; j < s.n(1); ++j) {
        if (i + 1 < s.n(0)) rhs += (u(i + 1, j) - u(i, j)) * (v(i + 1, j) - v(i, j));
        if (s.dim() == 2 && j + 1 < s.n(1)) rhs += (u(i, j + 1) - u(i, j)) * (v(i, j + 1) - v(i, j));
      }
    rhs /= s.h() * s.h();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("dirichlet energy") {
  CHECK(dirichlet_energy(GridFunction(GridSpec::square(0, 1, 9), 2.0)) == 0.0);
  for (int n : {17, 65, 257}) {
    const auto s = GridSpec::line(0.0, 1.0, n);
    const double e = dirichlet_energy(GridFunction::sample(s, [](double x, double) { return x; }));
    CHECK(std::abs(e - 0.5) <= s.h());
  }
  const auto s = GridSpec::line(0.0, 1.0, 257);
  const double e = dirichlet_energy(GridFunction::sample(s, [](double x, double) { return std::sin(2 * M_PI * x); }));
  CHECK(e == doctest::Approx(M_PI * M_PI).epsilon(1e-3));
}

TEST_CASE("linf_diff and grid mismatch") {
  const auto s = GridSpec::square(0, 1, 5);
  GridFunction a = GridFunction::sample(s, [](double x, double y) { return x * y; });
  GridFunction b = a;
  CHECK(linf_diff(a, b) == 0.0);
  b.values().array() += 0.5;
  CHECK(linf_diff(a, b) == doctest::Approx(0.5));
  CHECK_THROWS_AS(linf_diff(a, GridFunction(GridSpec::square(0, 1, 6))), SpecMismatch);
}

TEST_CASE("grid field is templated on scalar") {
  const auto s = GridSpec::line(0.0, 1.0, 5);
  GridField<float> u = GridField<float>::sample(s, [](double x, double) { return float(x * x); });
  const auto lap = laplacian(u);
  CHECK(lap(2) == doctest::Approx(2.0f).epsilon(1e-4));
}

// ---------------------------------------------------------------------------

TEST_CASE("screened operator is symmetric positive definite") {
  const auto s = GridSpec::square(0, 1, 12);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(s.size()), y(s.size()), Ax(s.size()), Ay(s.size());
  for (int trial = 0; trial < 5; ++trial) {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      x[k] = s.is_boundary_index(k) ? 0.0 : nd(rng);
      y[k] = s.is_boundary_index(k) ? 0.0 : nd(rng);
    }
    apply_screened_operator(s, 2.5, x, Ax);
    apply_screened_operator(s, 2.5, y, Ay);
    CHECK(Ax.dot(y) == doctest::Approx(x.dot(Ay)).epsilon(1e-12));
    CHECK(x.dot(Ax) > 0.0);
  }
}

TEST_CASE("screened poisson: constants and linear data") {
  const auto s = GridSpec::square(0, 1, 17);
  const double lambda = 3.0, c = 1.7;
  CgSettings cg{1e-12, 1000, false, true};
  auto r = screened_poisson_solve(GridFunction(s, lambda * c), DirichletBc::constant(s, c), lambda, cg);
  CHECK((r.u.values().array() - c).abs().maxCoeff() < 1e-9);

  const auto l = GridSpec::line(0, 1, 33);
  const auto bc = DirichletBc::from_function(l, [](double x, double) { return x; });
  for (bool direct : {true, false}) {
    CgSettings st{1e-14, 1000, false, direct};
    auto lin = screened_poisson_solve(GridFunction(l), bc, 0.0, st);
    for (int i = 0; i < 33; ++i) CHECK(lin.u(i) == doctest::Approx(l.coord(0, i)).epsilon(1e-12));
  }
}

TEST_CASE("1D direct solve agrees with CG") {
  const auto s = GridSpec::line(0, 1, 101);
  const auto rhs = GridFunction::sample(s, [](double x, double) { return std::exp(x) * std::sin(9 * x); });
  const auto bc = DirichletBc::from_function(s, [](double x, double) { return 1 + x; });
  const auto a = screened_poisson_solve(rhs, bc, 4.0, CgSettings{1e-13, 10000, false, true});
  const auto b = screened_poisson_solve(rhs, bc, 4.0, CgSettings{1e-13, 10000, false, false});
  CHECK(linf_diff(a.u, b.u) < 1e-10);
}

TEST_CASE("warm-started CG always moves off an inexact start") {
  const auto s = GridSpec::square(0, 1, 9);
  const auto rhs = GridFunction::sample(s, [](double x, double y) { return x + y; });
  const auto bc = DirichletBc::constant(s, 0.0);
  const auto exact = screened_poisson_solve(rhs, bc, 1.0, CgSettings{1e-14, 1000, false, true});
  GridFunction start = exact.u;
  start(4, 4) += 1e-9;
  const auto r = screened_poisson_solve(rhs, bc, 1.0, start, CgSettings{1e-3, 1000, true, true});
  CHECK(r.iterations >= 1);
  CHECK(linf_diff(r.u, exact.u) < 1e-9);
}

TEST_CASE("poisson with an indicator source") {
  CHECK(poisson_solve_indicator(GridFunction(GridSpec::square(0, 1, 9)), DirichletBc::constant(GridSpec::square(0, 1, 9), 0.0))
            .values()
            .cwiseAbs()
            .maxCoeff() == 0.0);
  // -v'' = chi_[a,b], v(0) = v(1) = 0, closed form by integrating twice
  const double a = 0.3, b = 0.6;
  auto exact = [&](double x) {
    const double m = b - a, c1 = m * (1.0 - (a + b) / 2.0);  // v'(0)
    if (x <= a) return c1 * x;
    if (x <= b) return c1 * x - 0.5 * (x - a) * (x - a);
    return c1 * x - m * (x - (a + b) / 2.0);
  };
  const auto s = GridSpec::line(0, 1, 201);
  const auto mask = GridFunction::sample(s, [&](double x, double) { return x >= a && x <= b ? 1.0 : 0.0; });
  const auto v = poisson_solve_indicator(mask, DirichletBc::constant(s, 0.0));
  double err = 0.0;
  for (int i = 0; i < s.n(0); ++i) err = std::max(err, std::abs(v(i) - exact(s.coord(0, i))));
  CHECK(err <= 2 * s.h());
}
