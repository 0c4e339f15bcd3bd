#include "doctest.h"

#include "l1obstacle/acceptance.hpp"
#include "l1obstacle/geometry.hpp"
#include "l1obstacle/hele_shaw.hpp"
#include "l1obstacle/problems.hpp"

#include <cmath>

using namespace l1obstacle;

namespace {

HeleShawSetup circles(int n, double t) {
  const auto& fx = find_problem("hs_circles");
  return std::get<HeleShawSetup>(fx.build(fx.grid(n), t));
}

DoublePenaltyParams quick() {
  DoublePenaltyParams dp;
  dp.tol = 1e-7;
  dp.max_outer = 20000;
  dp.cg = {1e-10, 500, true, true};
  return dp;
}

}  // namespace

TEST_CASE("rasterized shapes") {
  const auto s = GridSpec::square(-1, 1, 41);
  const auto m = rasterize(s, {Circle{{0, 0}, 0.5}});
  CHECK(m(20, 20) == 1.0);
  CHECK(m(0, 0) == 0.0);
  const auto tri = rasterize(s, {Polygon{{{-0.5, -0.5}, {0.5, -0.5}, {0, 0.5}}}});
  CHECK(tri(20, 15) == 1.0);
  CHECK(tri(5, 35) == 0.0);
}

TEST_CASE("transform without a source is the paraboloid") {
  const auto s = GridSpec::square(-1, 1, 33);
  const auto phi = transform_fbp_to_obstacle(GridFunction(s), 4.0);  // gamma = 2d
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const auto [i, j] = s.multi_index(k);
    const double x = s.coord(0, i), y = s.coord(1, j);
    CHECK(phi[k] == doctest::Approx(-(x * x + y * y)).scale(1.0));
  }
}

TEST_CASE("slot lift") {
  auto st = circles(64, 0.0);
  CHECK(linf_diff(build_hs_obstacle(st), hs_base_obstacle(st)) == 0.0);
  st.t = 0.3;
  const auto d = build_hs_obstacle(st).values() - hs_base_obstacle(st).values();
  CHECK((d - 0.3 * st.k_mask.values()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exact circle radius") {
  CHECK(exact_circle_radius(0.0, 1.0, std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)));
  double prev = 0.0;
  for (double t : {0.05, 0.1, 0.25, 0.5}) {
    const double R = exact_circle_radius(t, 1.0, std::sqrt(2.0));
    CHECK(R > prev);
    prev = R;
  }
  const double R = exact_circle_radius(0.25, 1.0, std::sqrt(2.0));
  CHECK(R == doctest::Approx(radial_fd_radius(0.25, 1.0, std::sqrt(2.0))).epsilon(1e-5));
}

TEST_CASE("no injection, no motion") {
  const auto& fx = find_problem("hs_circles");
  const auto s = fx.grid(48);
  HeleShawSetup st = std::get<HeleShawSetup>(fx.build(s, 0.0));
  st.omega0_mask = st.k_mask;
  const auto r = solve_hele_shaw(st, quick());
  REQUIRE(r.report.ok());
  CHECK(r.pressure.values().cwiseAbs().maxCoeff() <= 1e-5);
  CHECK(extract_free_boundary(r.pressure, 1e-5).empty());
}

TEST_CASE("circle setup: symmetric pressure, front grows with time") {
  double prev = 0.0;
  for (double t : {0.1, 0.25}) {
    const auto st = circles(65, t);
    const auto r = solve_hele_shaw(st, quick());
    REQUIRE(r.report.ok());
    const auto& p = r.pressure;
    const auto& s = p.spec();
    double asym = 0.0;
    for (int i = 0; i < s.n(0); ++i)
      for (int j = 0; j < s.n(1); ++j) {
        asym = std::max(asym, std::abs(p(i, j) - p(s.n(0) - 1 - i, j)));
        asym = std::max(asym, std::abs(p(i, j) - p(j, i)));
      }
    CHECK(asym < 1e-5);
    const auto fb = extract_free_boundary(p, 1e-5);
    REQUIRE_FALSE(fb.empty());
    const double R = mean_radius(fb, {0, 0});
    CHECK(R > prev);
    CHECK(std::abs(R - exact_circle_radius(t, 1.0, std::sqrt(2.0))) < 3 * s.h());
    prev = R;
  }
}

TEST_CASE("setup validation") {
  auto st = circles(32, 0.1);
  st.t = -1;
  CHECK_THROWS_AS(st.validate(), std::invalid_argument);
}
