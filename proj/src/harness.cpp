#include "l1obstacle/harness.hpp"

#include "l1obstacle/io.hpp"
#include "l1obstacle/penalty.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace l1obstacle {

double fit_rate(const std::vector<std::pair<double, double>>& h_err) {
  if (h_err.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [h, e] : h_err) {
    if (!(h > 0.0) || !(e > 0.0)) throw std::invalid_argument("fit_rate: h and errors must be positive");
    sx += std::log(h);
    sy += std::log(e);
  }
  const double m = static_cast<double>(h_err.size());
  const double mx = sx / m, my = sy / m;
  double num = 0, den = 0;
  for (const auto& [h, e] : h_err) {
    const double dx = std::log(h) - mx;
    num += dx * (std::log(e) - my);
    den += dx * dx;
  }
  if (den == 0.0) throw std::invalid_argument("fit_rate: all h are equal");
  return num / den;
}

// ---------------------------------------------------------------------------
// configuration

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const std::string t = trim(v);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(out))
    throw ConfigError("'" + key + "': not a number: '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  int out = 0;
  const std::string t = trim(v);
  const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
    throw ConfigError("'" + key + "': not an integer: '" + v + "'");
  return out;
}

template <typename T, typename F>
std::vector<T> to_list(const std::string& v, F&& conv) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(conv(tok));
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key_in, const std::string& value) {
  const std::string key = trim(key_in);
  if (key == "problem") problem = trim(value);
  else if (key == "n") n = to_int(key, value);
  else if (key == "mu" || key == "gamma") mu = to_double(key, value);
  else if (key == "lambda") lambda = to_double(key, value);
  else if (key == "tol") tol = to_double(key, value);
  else if (key == "max_outer") max_outer = to_int(key, value);
  else if (key == "tau") tau = to_double(key, value);
  else if (key == "lipschitz" || key == "L") lipschitz = to_double(key, value);
  else if (key == "t") t = to_double(key, value);
  else if (key == "eps") eps = to_double(key, value);
  else if (key == "output") output_dir = trim(value);
  else if (key == "study") {
    const std::string m = trim(value);
    if (m == "single") study = StudyMode::single;
    else if (m == "refine") study = StudyMode::refine;
    else if (m == "time-sweep" || m == "time_sweep") study = StudyMode::time_sweep;
    else throw ConfigError("'study': expected single, refine or time-sweep, got '" + m + "'");
  } else if (key == "levels") levels = to_list<int>(value, [&](const std::string& s) { return to_int(key, s); });
  else if (key == "times") times = to_list<double>(value, [&](const std::string& s) { return to_double(key, s); });
  else throw ConfigError("unknown configuration key '" + key + "'");
}

RunConfig RunConfig::parse(std::istream& is, const std::string& origin) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      c.set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file '" + path + "'");
  return parse(is, path);
}

void RunConfig::validate() const {
  if (problem.empty()) throw ConfigError("no problem given");
  try {
    find_problem(problem);
  } catch (const UnknownProblem& e) {
    throw ConfigError(e.what());
  }
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0)) throw ConfigError(std::string("'") + name + "' must be positive");
  };
  positive(mu, "mu");
  positive(lambda, "lambda");
  positive(tol, "tol");
  positive(tau, "tau");
  positive(lipschitz, "lipschitz");
  positive(eps, "eps");
  if (t && *t < 0.0) throw ConfigError("'t' must be >= 0");
  if (n && *n < 9) throw ConfigError("'n' must be >= 9");
  if (max_outer && *max_outer < 1) throw ConfigError("'max_outer' must be >= 1");
  if (study == StudyMode::refine) {
    if (levels.size() < 1) throw ConfigError("refine study needs levels");
    for (int l : levels)
      if (l < 9) throw ConfigError("refine levels must be >= 9");
  }
  if (study == StudyMode::time_sweep) {
    if (times.empty()) throw ConfigError("time-sweep study needs times");
    if (find_problem(problem).kind != ProblemKind::hele_shaw)
      throw ConfigError("time-sweep is only defined for Hele-Shaw problems");
    for (double v : times)
      if (!(v >= 0.0)) throw ConfigError("times must be >= 0");
  }
  if (output_dir.empty()) throw ConfigError("empty output directory");
}

EffectiveParams resolve_params(const NamedProblem& p, const RunConfig& c) {
  EffectiveParams e;
  e.n = c.n.value_or(p.params.n);
  const GridSpec s = p.grid(e.n);
  e.mu = c.mu.value_or(p.params.effective_mu(s));
  e.lambda = c.lambda.value_or(p.params.lambda);
  e.tol = c.tol.value_or(p.params.tol);
  e.max_outer = c.max_outer.value_or(p.params.max_outer);
  e.t = c.t.value_or(p.params.t);
  e.eps = c.eps.value_or(10.0 * e.tol);
  if (p.kind == ProblemKind::nonlinear) {
    NesterovSettings nes = NesterovSettings::defaults(s, e.lambda, e.tol);
    if (c.lipschitz) nes.lipschitz = *c.lipschitz;
    if (c.tau) {
      nes.tau = *c.tau;
      if (!c.lipschitz) nes.lipschitz = 1.0 / nes.tau;  // tau = 1/L when only tau is given
    } else {
      nes.tau = 1.0 / nes.lipschitz;
    }
    e.tau = nes.tau;
    e.lipschitz = nes.lipschitz;
  }
  return e;
}

// ---------------------------------------------------------------------------
// running

double RunResult::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

CgSettings harness_cg() {
  CgSettings cg;
  cg.rel_tol = 1e-8;
  cg.max_iter = 2000;
  return cg;
}

double linf_to_reference(const NamedProblem& p, const GridFunction& u) {
  return linf_diff(u, GridFunction::sample(u.spec(), p.reference));
}

void obstacle_metrics(const NamedProblem& p, const ObstacleProblem& op, const EffectiveParams& e, RunResult& r) {
  const auto& u = r.report.u;
  const auto& s = u.spec();
  r.metrics.emplace_back("feasibility", r.report.feasibility_violation);
  r.metrics.emplace_back("subharmonicity", r.report.subharmonicity);
  r.metrics.emplace_back("complementarity", r.report.complementarity);
  r.metrics.emplace_back("mu_lower_bound", mu_lower_bound(op.phi, op.bc, op.source).mu_min);
  if (p.has_reference()) r.metrics.emplace_back("linf_error", linf_to_reference(p, u));
  GridFunction gap = u;
  gap.values() -= op.phi.values();
  const FreeBoundary fb = extract_level_set(gap, e.eps);
  double contact = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (!s.is_boundary_index(k) && gap[k] <= e.eps) contact += 1.0;
  r.metrics.emplace_back("contact_nodes", contact);
  if (s.dim() == 2) r.metrics.emplace_back("contact_area_radius", std::sqrt(contact * s.cell_volume() / M_PI));
  r.boundary = fb.components;
}

}  // namespace

RunResult run_problem(const NamedProblem& p, const EffectiveParams& e) {
  RunResult r;
  r.id = p.id;
  r.params = e;
  r.dim = p.dim;
  const GridSpec s = p.grid(e.n);
  ProblemInstance inst = p.build(s, e.t);

  SolverParams sp;
  sp.mu = e.mu;
  sp.lambda = e.lambda;
  sp.tol = e.tol;
  sp.max_outer = e.max_outer;
  sp.cg = harness_cg();

  switch (p.kind) {
    case ProblemKind::obstacle: {
      const auto& op = std::get<ObstacleProblem>(inst);
      r.report = solve_linear_obstacle(op, sp);
      obstacle_metrics(p, op, e, r);
      break;
    }
    case ProblemKind::nonlinear: {
      const auto& op = std::get<ObstacleProblem>(inst);
      NesterovSettings nes = NesterovSettings::defaults(s, e.lambda, e.tol);
      nes.tau = e.tau;
      nes.lipschitz = e.lipschitz;
      r.report = solve_nonlinear_obstacle(op, sp, nes);
      r.metrics.emplace_back("feasibility", r.report.feasibility_violation);
      r.metrics.emplace_back("complementarity", r.report.complementarity);
      if (s.dim() == 1) {
        r.metrics.emplace_back("linf_error_taut_string", linf_diff(r.report.u, taut_string_1d(op)));
        // largest |Delta_h u| on non-contact nodes whose neighbours are non-contact too
        const GridFunction lap = laplacian(r.report.u, op.bc);
        double worst = 0.0;
        auto free_node = [&](int i) { return i <= 0 || i >= s.n(0) - 1 || r.report.u[i] - op.phi[i] > e.eps; };
        for (int i = 1; i + 1 < s.n(0); ++i)
          if (free_node(i - 1) && free_node(i) && free_node(i + 1)) worst = std::max(worst, std::abs(lap[i]));
        r.metrics.emplace_back("max_free_laplacian", worst);
      }
      GridFunction gap = r.report.u;
      gap.values() -= op.phi.values();
      r.boundary = extract_level_set(gap, e.eps).components;
      break;
    }
    case ProblemKind::two_phase: {
      const auto& tp = std::get<TwoPhaseProblem>(inst);
      r.report = solve_two_phase(tp, sp);
      for (const auto& d : r.report.diagnostics) r.metrics.push_back(d);
      if (p.has_reference()) r.metrics.emplace_back("linf_error", linf_to_reference(p, r.report.u));
      const ZeroStructure z = extract_zero_structure(r.report.u, e.eps);
      r.metrics.emplace_back("plus_nodes", z.plus.values().sum());
      r.metrics.emplace_back("minus_nodes", z.minus.values().sum());
      r.metrics.emplace_back("zero_nodes", z.zero.values().sum());
      const auto& u = r.report.u;
      if (s.dim() == 1) {
        // zero set bracketed by the phases attached to the two ends
        const int n = s.n(0);
        int i = 0;
        while (i + 1 < n && u[i + 1] < -e.eps) ++i;
        int j = n - 1;
        while (j - 1 > 0 && u[j - 1] > e.eps) --j;
        auto cross = [&](int a, int b, double level) {
          return s.coord(0, a) + (level - u[a]) / (u[b] - u[a]) * s.h();
        };
        if (i + 1 < n && u[0] < -e.eps) r.metrics.emplace_back("zero_set_lo", cross(i, i + 1, -e.eps));
        if (j > 0 && u[n - 1] > e.eps) r.metrics.emplace_back("zero_set_hi", cross(j - 1, j, e.eps));
        const auto zc = level_crossings_1d(u, 0.0);
        r.metrics.emplace_back("sign_changes", static_cast<double>(zc.size()));
        if (zc.size() == 1) r.metrics.emplace_back("free_boundary", zc.front());
      }
      r.boundary = z.upper.components;
      r.boundary.insert(r.boundary.end(), z.lower.components.begin(), z.lower.components.end());
      break;
    }
    case ProblemKind::hele_shaw: {
      auto setup = std::get<HeleShawSetup>(inst);
      DoublePenaltyParams dp;
      dp.gamma1 = dp.gamma2 = e.mu;
      dp.lambda1 = dp.lambda2 = e.lambda;
      dp.tol = e.tol;
      dp.max_outer = e.max_outer;
      dp.cg = harness_cg();
      HeleShawResult hs = solve_hele_shaw(setup, dp);
      r.report = std::move(hs.report);
      r.metrics.emplace_back("feasibility", r.report.feasibility_violation);
      for (const auto& d : r.report.diagnostics) r.metrics.push_back(d);
      const FreeBoundary fb = extract_free_boundary(hs.pressure, e.eps);
      const double mr = mean_radius(fb, {0.0, 0.0}), ar = area_radius(fb);
      r.metrics.emplace_back("mean_radius", mr);
      r.metrics.emplace_back("area_radius", ar);
      if (p.exact_radius) {
        const double R = p.exact_radius(e.t);
        r.metrics.emplace_back("exact_radius", R);
        r.metrics.emplace_back("radius_error", std::abs(mr - R));
        r.metrics.emplace_back("area_radius_error", std::abs(ar - R));
      }
      r.metrics.emplace_back("boundary_components", static_cast<double>(fb.components.size()));
      r.boundary = fb.components;
      break;
    }
  }
  return r;
}

std::string format_report(const RunResult& r) {
  const auto& p = find_problem(r.id);
  std::ostringstream os;
  const auto& e = r.params;
  os << "problem = " << r.id << '\n';
  os << "kind = " << to_string(p.kind) << '\n';
  os << "description = " << p.description << '\n';
  os << "reference = " << p.reference_note << '\n';
  os << "n = " << e.n << '\n';
  os << "h = " << format_double(p.grid(e.n).h()) << '\n';
  os << (p.kind == ProblemKind::hele_shaw ? "gamma = " : "mu = ") << format_double(e.mu) << '\n';
  os << "lambda = " << format_double(e.lambda) << '\n';
  os << "tol = " << format_double(e.tol) << '\n';
  os << "max_outer = " << e.max_outer << '\n';
  os << "eps = " << format_double(e.eps) << '\n';
  if (p.kind == ProblemKind::hele_shaw) os << "t = " << format_double(e.t) << '\n';
  if (p.kind == ProblemKind::nonlinear) {
    os << "tau = " << format_double(e.tau) << '\n';
    os << "lipschitz = " << format_double(e.lipschitz) << '\n';
  }
  for (const auto& [k, v] : p.targets) os << "target." << k << " = " << format_double(v) << '\n';
  os << "status = " << (r.report.ok() ? (r.report.converged ? "converged" : "not converged") : "failed") << '\n';
  if (!r.report.ok()) os << "failure = " << r.report.failure << '\n';
  os << "outer_iterations = " << r.report.outer_iters << '\n';
  if (!r.report.history.empty()) os << "final_diff = " << format_double(r.report.history.back().diff) << '\n';
  for (const auto& [k, v] : r.metrics) os << k << " = " << format_double(v) << '\n';
  os << "wall_seconds = " << format_double(r.report.wall_seconds) << '\n';
  return os.str();
}

void write_artifacts(const RunResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  write_grid_csv((d / "solution.csv").string(), r.report.u);
  write_history_csv((d / "history.csv").string(), r.report.history);
  write_polylines_csv((d / "boundary.csv").string(), r.boundary, r.dim);
  std::ofstream os(d / "report.txt", std::ios::binary);
  if (!os) throw std::runtime_error("cannot write report in '" + dir + "'");
  os << format_report(r);
}

namespace {

// error measure used by refinement studies
double study_error(const RunResult& r) {
  double e = r.metric("radius_error");
  if (std::isnan(e)) e = r.metric("linf_error");
  if (std::isnan(e)) e = r.metric("linf_error_taut_string");
  return e;
}

std::string level_dir(const std::string& base, const std::string& tag) {
  return (std::filesystem::path(base) / tag).string();
}

}  // namespace

int execute(const RunConfig& c, std::ostream& log) {
  try {
    c.validate();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  }
  const NamedProblem& p = find_problem(c.problem);
  bool all_ok = true;
  try {
    std::filesystem::create_directories(c.output_dir);
  } catch (const std::exception& e) {
    log << "config error: cannot create output directory '" << c.output_dir << "': " << e.what() << '\n';
    return 2;
  }

  auto one = [&](const RunConfig& rc, const std::string& dir) {
    const EffectiveParams e = resolve_params(p, rc);
    RunResult r = run_problem(p, e);
    write_artifacts(r, dir);
    all_ok = all_ok && r.ok();
    log << p.id << " n=" << e.n;
    if (p.kind == ProblemKind::hele_shaw) log << " t=" << e.t;
    log << ": " << (r.report.ok() ? (r.report.converged ? "converged" : "NOT converged") : "FAILED") << " after "
        << r.report.outer_iters << " iterations";
    if (!r.report.ok()) log << " (" << r.report.failure << ")";
    log << '\n';
    return r;
  };

  try {
    switch (c.study) {
      case StudyMode::single: {
        const RunResult r = one(c, c.output_dir);
        log << format_report(r);
        break;
      }
      case StudyMode::refine: {
        std::ofstream table(std::filesystem::path(c.output_dir) / "study.csv", std::ios::binary);
        table << "n,h,error,outer_iterations\n";
        std::vector<std::pair<double, double>> pts;
        for (int n : c.levels) {
          RunConfig rc = c;
          rc.n = n;
          const RunResult r = one(rc, level_dir(c.output_dir, "n" + std::to_string(n)));
          const double h = p.grid(n).h(), err = study_error(r);
          table << n << ',' << format_double(h) << ',' << format_double(err) << ',' << r.report.outer_iters << '\n';
          log << "  h=" << format_double(h) << " error=" << format_double(err) << '\n';
          if (err > 0.0 && std::isfinite(err)) pts.emplace_back(h, err);
        }
        if (pts.size() >= 3) {
          const double rate = fit_rate(pts);
          log << "fitted rate = " << format_double(rate) << '\n';
          std::ofstream(std::filesystem::path(c.output_dir) / "rate.txt") << "rate = " << format_double(rate) << '\n';
        }
        break;
      }
      case StudyMode::time_sweep: {
        std::ofstream table(std::filesystem::path(c.output_dir) / "study.csv", std::ios::binary);
        table << "t,mean_radius,area_radius,outer_iterations\n";
        for (double t : c.times) {
          RunConfig rc = c;
          rc.t = t;
          const RunResult r = one(rc, level_dir(c.output_dir, "t" + format_double(t)));
          table << format_double(t) << ',' << format_double(r.metric("mean_radius")) << ','
                << format_double(r.metric("area_radius")) << ',' << r.report.outer_iters << '\n';
        }
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    log << "solver error: " << e.what() << '\n';
    return 1;
  }
  return all_ok ? 0 : 1;
}

}  // namespace l1obstacle
