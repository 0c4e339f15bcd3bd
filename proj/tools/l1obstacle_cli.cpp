// Command-line front end: list fixtures, run them, run studies, run the
// acceptance checks.
#include "l1obstacle/acceptance.hpp"
#include "l1obstacle/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace l1obstacle;

namespace {

struct Overrides {
  std::string config;
  std::optional<int> n, max_outer;
  std::optional<double> mu, lambda, tol, tau, lipschitz, t, eps;
  std::string out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key = value configuration file (flags override it)");
  cmd->add_option("--n", o.n, "nodes per axis");
  cmd->add_option("--mu,--gamma", o.mu, "penalty parameter");
  cmd->add_option("--lambda", o.lambda, "splitting weight");
  cmd->add_option("--tol", o.tol, "stopping tolerance on successive iterates (max norm)");
  cmd->add_option("--max-outer", o.max_outer, "outer iteration cap");
  cmd->add_option("--tau", o.tau, "Nesterov step (nonlinear problems)");
  cmd->add_option("--lipschitz,-L", o.lipschitz, "Nesterov Lipschitz constant (nonlinear problems)");
  cmd->add_option("--t", o.t, "time (Hele-Shaw problems)");
  cmd->add_option("--eps", o.eps, "level for free-boundary extraction (default 10 tol)");
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig merge(const std::string& problem, const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::from_file(o.config);
  if (!problem.empty()) c.problem = problem;
  if (o.n) c.n = o.n;
  if (o.max_outer) c.max_outer = o.max_outer;
  if (o.mu) c.mu = o.mu;
  if (o.lambda) c.lambda = o.lambda;
  if (o.tol) c.tol = o.tol;
  if (o.tau) c.tau = o.tau;
  if (o.lipschitz) c.lipschitz = o.lipschitz;
  if (o.t) c.t = o.t;
  if (o.eps) c.eps = o.eps;
  if (!o.out.empty()) c.output_dir = o.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L1 exact-penalty solvers for obstacle, two-phase and Hele-Shaw problems"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the problem ids");

  std::string run_problem_id;
  std::vector<std::string> study_args;
  Overrides run_o;
  auto* run = app.add_subcommand("run", "solve one problem and write artifacts");
  run->add_option("problem", run_problem_id, "problem id (see list)");
  run->add_option("--study", study_args, "refine <n,n,...> | time-sweep <t,t,...>")->expected(1, 2);
  add_overrides(run, run_o);

  std::string study_problem_id, refine_levels, sweep_times;
  Overrides study_o;
  auto* study = app.add_subcommand("study", "refinement or time-sweep study");
  study->add_option("problem", study_problem_id, "problem id")->required();
  auto* ref_opt = study->add_option("--refine", refine_levels, "comma-separated grid sizes");
  auto* time_opt = study->add_option("--times", sweep_times, "comma-separated times (Hele-Shaw)");
  ref_opt->excludes(time_opt);
  add_overrides(study, study_o);

  std::vector<int> only;
  auto* check = app.add_subcommand("check", "run the acceptance criteria and print pass/fail");
  check->add_option("--only", only, "criterion numbers to run (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& p : problem_library())
        std::cout << p.id << "  [" << to_string(p.kind) << ", " << p.dim << "D]  " << p.description
                  << "\n    reference: " << p.reference_note << '\n';
      return 0;
    }
    if (*run) {
      RunConfig c = merge(run_problem_id, run_o);
      if (!study_args.empty()) {
        c.set("study", study_args[0]);
        if (study_args.size() > 1) c.set(c.study == StudyMode::time_sweep ? "times" : "levels", study_args[1]);
      }
      return execute(c, std::cout);
    }
    if (*study) {
      RunConfig c = merge(study_problem_id, study_o);
      if (!refine_levels.empty()) {
        c.set("study", "refine");
        c.set("levels", refine_levels);
      } else if (!sweep_times.empty()) {
        c.set("study", "time-sweep");
        c.set("times", sweep_times);
      } else if (c.study == StudyMode::single) {
        throw ConfigError("study needs --refine or --times");
      }
      return execute(c, std::cout);
    }
    if (*check) {
      std::vector<int> ids = only.empty() ? acceptance_criteria() : only;
      bool all = true;
      for (int id : ids) {
        const CriterionResult r = run_criterion(id);
        std::cout << format_result(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
