#pragma once

// Benchmark problems and the declarative coefficient built-ins from which
// they (and user-defined problems) are assembled. A problem is
//   du/dt + sum_p mu_p(t) A_p u = sum_q lambda_q(t) f_q(x),  u(0) = u0,
// on the unit square with homogeneous Dirichlet conditions, where each A_p is
// a diffusion (optionally plus rotation advection) operator.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parasol/space_fem.hpp"
#include "parasol/time_fem.hpp"

namespace parasol {

/// Named time-coefficient built-ins:
///   one            -> 1
///   constant       -> a
///   sin            -> a * sin(omega * t)
///   cos            -> a * cos(omega * t)
///   sin_plus_const -> sin(omega * t) + c
struct TimeFnConfig {
  std::string kind = "one";
  double a = 1.0;
  double omega = 0.0;
  double c = 0.0;
};

/// Named space-field built-ins:
///   zero         -> 0
///   one          -> 1
///   constant     -> a
///   sine_product -> a * sin(kx pi x) * sin(ky pi y)
///   gaussian     -> a * exp(-((x-x0)^2 + (y-y0)^2) / width^2)
struct SpaceFnConfig {
  std::string kind = "zero";
  double a = 1.0;
  double kx = 1.0;
  double ky = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 1.0;
};

/// One operator term mu_p(t) * (-diffusion * Laplacian + advection), where the
/// optional advection is the divergence-free rigid rotation
/// c(x, y) = scale * (1/2 - y, x - 1/2).
struct OperatorConfig {
  TimeFnConfig mu;
  double diffusion = 1.0;
  bool rotation = false;
  double rotation_scale = 0.0;
};

struct SourceConfig {
  TimeFnConfig lambda;
  SpaceFnConfig f;
};

struct ProblemConfig {
  std::string name;
  double horizon = 1.0;
  double alpha = 1.0;
  /// Upper bound for the mu_p (weights the dual norm of the time derivative).
  double bound_m = 1.0;
  std::vector<OperatorConfig> operators;
  std::vector<SourceConfig> sources;
  SpaceFnConfig initial;
};

TimeFn make_time_fn(const TimeFnConfig& cfg);
ScalarField make_space_fn(const SpaceFnConfig& cfg);

/// Separated closed-form solution sum_n sigma_n(t) w_n(x, y).
struct ManufacturedSolution {
  struct Term {
    TimeFn sigma;
    ScalarField w;
  };
  std::vector<Term> terms;
  /// Squared L2(time; H1-seminorm) norm, closed form.
  double l2h1_norm_sq = 0.0;

  double eval(double t, double x, double y) const;
};

struct Problem {
  ProblemConfig config;
  std::optional<ManufacturedSolution> exact;

  const std::string& name() const { return config.name; }
  double horizon() const { return config.horizon; }
  double alpha() const { return config.alpha; }
  double bound_m() const { return config.bound_m; }
  std::size_t num_operators() const { return config.operators.size(); }
  std::size_t num_sources() const { return config.sources.size(); }
};

Problem make_problem(const ProblemConfig& cfg);

/// Heat equation with a separated manufactured solution
/// sum_{n<=modes} n^-4 sin(pi n^3 t) sin(pi n x) sin(pi n y).
Problem make_heat_manufactured(int modes = 10);

/// Heat operator scaled by the oscillating coefficient sin(100 pi t) + 2 with
/// constant source f = 1 and u0 = 0.
Problem make_time_diffusion();

/// -0.1 Laplacian + rigid-rotation advection, no source, Gaussian initial
/// condition centred at (2/3, 1/2) with width 0.07.
Problem make_advection_diffusion();

/// Lookup by CLI name:
/// heat-manufactured | time-diffusion | advection-diffusion | zero
/// (the last: heat operator, no source, zero initial data).
Problem problem_by_name(const std::string& name);

/// Point value of the exact solution; throws if the problem has none.
double eval_exact(const Problem& p, double t, double x, double y);

/// Assembled space-side data for a problem on a given mesh.
struct SpaceDiscretization {
  QuadMesh mesh;
  std::shared_ptr<const SparseMatrix> mass;
  std::shared_ptr<const SparseMatrix> stiffness;
  std::shared_ptr<const SpdFactorization> stiffness_solver;
  /// A_p; aliases `stiffness` exactly when the operator is the pure
  /// unit-coefficient diffusion (enabling exact term simplifications).
  std::vector<std::shared_ptr<const SparseMatrix>> operators;
  std::vector<std::vector<double>> loads;    // f_q moment vectors
  std::vector<double> initial_moments;       // u0 moment vector
};

SpaceDiscretization discretize_space(const Problem& p, index_t cells_per_side);

/// Assembled time-side data for a problem on a given grid.
struct TimeDiscretization {
  TimeGrid grid;
  TimeMatrices base;  // stiffness, mass, derivative, initial_outer
  std::vector<std::vector<TriDiagMatrix>> weighted_mass;  // [p][p']
  std::vector<TriDiagMatrix> weighted_derivative;         // [p]
  std::vector<std::vector<double>> derivative_moments;    // [q]
  std::vector<std::vector<std::vector<double>>> weighted_moments;  // [p][q]
};

TimeDiscretization discretize_time(const Problem& p, index_t elements);

}  // namespace parasol
