// Named problem instances with their default solver parameters and, where one
// exists, a reference solution evaluated at node coordinates.
#pragma once

#include "l1obstacle/hele_shaw.hpp"
#include "l1obstacle/nonlinear_obstacle.hpp"
#include "l1obstacle/obstacle_solver.hpp"
#include "l1obstacle/two_phase.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace l1obstacle {

enum class ProblemKind { obstacle, nonlinear, two_phase, hele_shaw };
const char* to_string(ProblemKind k);

class UnknownProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default parameters of a fixture. For Hele-Shaw, mu/lambda are gamma/lambda
/// (used for both penalties).
struct FixtureParams {
  int n = 256;
  double mu = 0.0;
  bool mu_over_h2 = false;  ///< mu is given as mu * h^2 (effective mu = mu / h^2)
  double lambda = 0.0;
  double tol = 1e-6;
  int max_outer = 10000;
  double t = 0.0;           ///< Hele-Shaw time
  double tau_h2 = 0.0;      ///< reference Nesterov step tau / h^2, informational; 0 if none

  double effective_mu(const GridSpec& s) const { return mu_over_h2 ? mu / (s.h() * s.h()) : mu; }
};

using ProblemInstance = std::variant<ObstacleProblem, TwoPhaseProblem, HeleShawSetup>;

struct NamedProblem {
  std::string id;
  ProblemKind kind;
  int dim;
  double lo, hi;  ///< domain [lo,hi]^dim
  std::string description;
  std::string reference_note;  ///< what the reference is and how trustworthy
  FixtureParams params;
  std::function<ProblemInstance(const GridSpec&, double t)> builder;
  std::function<double(double, double)> reference;  ///< empty if none
  std::vector<std::pair<std::string, double>> targets;  ///< scalar reference values
  std::function<double(double t)> exact_radius;          ///< Hele-Shaw circles only

  GridSpec grid(int n) const;
  ProblemInstance build(const GridSpec& s) const { return builder(s, params.t); }
  ProblemInstance build(const GridSpec& s, double t) const { return builder(s, t); }
  bool has_reference() const { return static_cast<bool>(reference); }
};

const std::vector<NamedProblem>& problem_library();
/// Throws UnknownProblem.
const NamedProblem& find_problem(const std::string& id);

/// Reference sampled at the nodes; throws std::invalid_argument without one.
GridFunction evaluate_reference(const std::string& id, const GridSpec& s);

/// Contact radius r* of the hemisphere fixture: root of r^2 (1 - log(r/2)) = 1
/// in (0,1) by bisection.
double hemisphere_contact_radius();

/// Free-boundary point of u'' = 2 chi{u>0} - chi{u<0}, u(-1) = -1, u(1) = 1.
double asymmetric_two_phase_crossing();

}  // namespace l1obstacle
