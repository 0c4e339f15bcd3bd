// Run plumbing shared by the command-line tool and the acceptance suite:
// configuration, single runs with artifacts, refinement and time studies.
#pragma once

#include "l1obstacle/problems.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l1obstacle {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares slope of log e against log h. Needs >= 3 points with
/// positive h and e; throws std::invalid_argument otherwise.
double fit_rate(const std::vector<std::pair<double, double>>& h_err);

enum class StudyMode { single, refine, time_sweep };

struct RunConfig {
  std::string problem;
  std::optional<int> n;
  std::optional<double> mu, lambda, tol, tau, lipschitz, t, eps;
  std::optional<int> max_outer;
  std::string output_dir = "out";
  StudyMode study = StudyMode::single;
  std::vector<int> levels;    ///< refine
  std::vector<double> times;  ///< time-sweep

  /// Sets one key (problem, n, mu, lambda, tol, max_outer, tau, lipschitz, t,
  /// eps, output, study, levels, times). Throws ConfigError.
  void set(const std::string& key, const std::string& value);
  /// Reads `key = value` lines; `#` starts a comment. Throws ConfigError.
  static RunConfig from_file(const std::string& path);
  static RunConfig parse(std::istream& is, const std::string& origin = "<config>");
  /// Throws ConfigError for an unknown problem or out-of-range values.
  void validate() const;
};

/// Effective parameters after fixture defaults and overrides are merged.
struct EffectiveParams {
  int n = 0;
  double mu = 0.0;
  double lambda = 0.0;
  double tol = 0.0;
  int max_outer = 0;
  double t = 0.0;
  double eps = 0.0;
  double tau = 0.0;        ///< nonlinear only
  double lipschitz = 0.0;  ///< nonlinear only
};

EffectiveParams resolve_params(const NamedProblem& p, const RunConfig& c);

struct RunResult {
  std::string id;
  EffectiveParams params;
  SolveReport report;
  /// Named scalar results (errors, radii, residuals), in a fixed order.
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Polyline> boundary;
  int dim = 1;

  bool ok() const { return report.ok() && report.converged; }
  /// NaN if absent.
  double metric(const std::string& name) const;
};

/// Solves one instance. No files are written.
RunResult run_problem(const NamedProblem& p, const EffectiveParams& e);

/// Writes solution.csv, history.csv, boundary.csv and report.txt into dir.
void write_artifacts(const RunResult& r, const std::string& dir);

/// The report text; every line is `key = value`. The wall-time line is the
/// only non-deterministic content.
std::string format_report(const RunResult& r);

/// Executes a configuration (single run or study) and writes artifacts.
/// Returns the process exit status: 0 success, 1 solver failure or
/// non-convergence, 2 configuration error.
int execute(const RunConfig& c, std::ostream& log);

}  // namespace l1obstacle
