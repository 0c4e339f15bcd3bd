#include "doctest.h"

#include "l1obstacle/harness.hpp"
#include "l1obstacle/io.hpp"
#include "l1obstacle/problems.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace l1obstacle;

TEST_CASE("fixture values") {
  const auto& p1 = find_problem("phi1_1d");
  const auto s = p1.grid(257);
  const auto op = std::get<ObstacleProblem>(p1.build(s));
  CHECK(op.phi(128) == doctest::Approx(12.5));  // x = 0.5
  CHECK(p1.reference(0.1, 0) == doctest::Approx((100 - 50 * std::sqrt(2.0)) * 0.1));
  CHECK(find_problem("phi2_1d").reference(0.375, 0) == doctest::Approx(10.0));
  const auto& tp = find_problem("two_phase_sym");
  CHECK(tp.reference(0.0, 0) == 0.0);
  CHECK(tp.reference(0.75, 0) == doctest::Approx(0.25));
  CHECK(tp.reference(-0.75, 0) == doctest::Approx(-0.25));
}

TEST_CASE("scalar references by independent bisection") {
  auto bisect = [](auto f, double lo, double hi) {
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (lo + hi);
      ((f(lo) < 0) == (f(m) < 0) ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
  };
  const double rs = bisect([](double r) { return r * r * (1 - std::log(r / 2)) - 1; }, 0.1, 1.0);
  CHECK(hemisphere_contact_radius() == doctest::Approx(rs).epsilon(1e-12));
  CHECK(rs == doctest::Approx(0.69797).epsilon(1e-5));
  // u = -1 + s(a)(x+1) + (x+1)^2 / 2 on [-1,a] with u(a) = 0, u'(a) = 0 on the right
  const double a = bisect(
      [](double a) {
        const double sa = (1 - (1 + a) * (1 + a) / 2) / (1 + a);
        return (1 - a) * (1 - a) + sa * (1 - a) - 1;
      },
      0.0, 0.5);
  CHECK(asymmetric_two_phase_crossing() == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("every fixture builds with boundary data above the obstacle") {
  for (const auto& p : problem_library()) {
    CAPTURE(p.id);
    const auto s = p.grid(p.dim == 1 ? 65 : 33);
    const auto inst = p.build(s);
    if (auto op = std::get_if<ObstacleProblem>(&inst)) CHECK_NOTHROW(op->validate());
    if (auto tp = std::get_if<TwoPhaseProblem>(&inst)) CHECK_NOTHROW(tp->validate());
    if (auto hs = std::get_if<HeleShawSetup>(&inst)) CHECK_NOTHROW(hs->validate());
  }
  CHECK_THROWS_AS(find_problem("nope"), UnknownProblem);
}

TEST_CASE("grid csv round trip") {
  for (const auto& s : {GridSpec::line(-1, 1, 17), GridSpec::square(0, 2, 9)}) {
    const auto u = GridFunction::sample(s, [](double x, double y) { return std::sin(3 * x) + y / 7; });
    std::stringstream ss;
    write_grid_csv(ss, u);
    const auto v = read_grid_csv(ss);
    CHECK(v.spec() == s);
    CHECK(linf_diff(u, v) == 0.0);
  }
  std::stringstream bad("x,value\n0,1\nfoo\n");
  CHECK_THROWS(read_grid_csv(bad));
}

TEST_CASE("doubles print exactly and shortest-first") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("fit_rate") {
  std::vector<std::pair<double, double>> pts;
  for (double h : {0.1, 0.05, 0.025}) pts.emplace_back(h, h);
  CHECK(fit_rate(pts) == doctest::Approx(1.0));
  pts.clear();
  for (double h : {0.1, 0.05, 0.025, 0.0125}) pts.emplace_back(h, 3 * std::pow(h, 0.8));
  CHECK(fit_rate(pts) == doctest::Approx(0.8).epsilon(1e-6));
  pts = {{1.0 / 128, 0.0238}, {1.0 / 256, 0.0124}, {1.0 / 512, 0.0083}, {1.0 / 1024, 0.0044}};
  CHECK(std::abs(fit_rate(pts) - 0.80) < 0.02);
  CHECK_THROWS_AS(fit_rate({{0.1, 0.1}, {0.05, 0.05}}), std::invalid_argument);
}

TEST_CASE("config parsing") {
  std::istringstream is("# comment\nproblem = phi1_1d\nn = 129   # trailing\nmu=300\nstudy = refine\nlevels = 65, 129\n");
  const auto c = RunConfig::parse(is);
  CHECK(c.problem == "phi1_1d");
  CHECK(*c.n == 129);
  CHECK(*c.mu == 300.0);
  CHECK(c.study == StudyMode::refine);
  CHECK(c.levels == std::vector<int>{65, 129});
  CHECK_NOTHROW(c.validate());

  RunConfig d;
  CHECK_THROWS_AS(d.set("colour", "blue"), ConfigError);
  CHECK_THROWS_AS(d.set("n", "many"), ConfigError);
  d.problem = "no_such_problem";
  CHECK_THROWS_AS(d.validate(), ConfigError);
  std::istringstream broken("problem phi1_1d\n");
  CHECK_THROWS_AS(RunConfig::parse(broken), ConfigError);
}

TEST_CASE("fixture defaults reach the solver") {
  RunConfig c;
  c.problem = "phi1_1d";
  const auto e = resolve_params(find_problem("phi1_1d"), c);
  CHECK(e.n == 256);
  CHECK(e.mu == 300.0);
  CHECK(e.lambda == 45.0);
  CHECK(e.eps == doctest::Approx(10 * e.tol));
  c.tau = 1e-6;
  const auto nl = resolve_params(find_problem("minimal_surface_osc"), c);
  CHECK(nl.lipschitz == doctest::Approx(1e6));
}

TEST_CASE("execute writes artifacts and maps outcomes to exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "l1obstacle_exec_test";
  std::filesystem::remove_all(dir);
  RunConfig c;
  c.problem = "phi1_1d";
  c.n = 65;
  c.output_dir = dir.string();
  std::ostringstream log;
  CHECK(execute(c, log) == 0);
  for (const char* f : {"solution.csv", "history.csv", "boundary.csv", "report.txt"})
    CHECK(std::filesystem::exists(dir / f));
  c.max_outer = 2;  // cannot converge in two steps
  CHECK(execute(c, log) == 1);
  c.problem = "unknown";
  CHECK(execute(c, log) == 2);

  RunConfig st;
  st.problem = "phi2_1d";
  st.study = StudyMode::refine;
  st.levels = {65, 129, 257};
  st.tol = 1e-10;
  st.max_outer = 400000;
  st.output_dir = (dir / "study").string();
  CHECK(execute(st, log) == 0);
  CHECK(std::filesystem::exists(dir / "study" / "study.csv"));
  CHECK(std::filesystem::exists(dir / "study" / "rate.txt"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("report lists the applied parameters") {
  RunConfig c;
  c.problem = "phi1_1d";
  c.n = 65;
  const auto& p = find_problem("phi1_1d");
  const auto r = run_problem(p, resolve_params(p, c));
  const auto text = format_report(r);
  CHECK(text.find("mu = 300") != std::string::npos);
  CHECK(text.find("lambda = 45") != std::string::npos);
  CHECK(text.find("linf_error = ") != std::string::npos);
  CHECK(std::isfinite(r.metric("linf_error")));
  CHECK(std::isnan(r.metric("nothing")));
}
