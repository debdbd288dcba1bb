#include "parasol/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace parasol {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TimeFn make_time_fn(const TimeFnConfig& cfg) {
  if (cfg.kind == "one") return [](double) { return 1.0; };
  if (cfg.kind == "constant") {
    const double a = cfg.a;
    return [a](double) { return a; };
  }
  if (cfg.kind == "sin") {
    const double a = cfg.a, omega = cfg.omega;
    return [a, omega](double t) { return a * std::sin(omega * t); };
  }
  if (cfg.kind == "cos") {
    const double a = cfg.a, omega = cfg.omega;
    return [a, omega](double t) { return a * std::cos(omega * t); };
  }
  if (cfg.kind == "sin_plus_const") {
    const double omega = cfg.omega, c = cfg.c;
    return [omega, c](double t) { return std::sin(omega * t) + c; };
  }
  throw std::invalid_argument("unknown time coefficient kind: " + cfg.kind);
}

ScalarField make_space_fn(const SpaceFnConfig& cfg) {
  if (cfg.kind == "zero") return [](double, double) { return 0.0; };
  if (cfg.kind == "one") return [](double, double) { return 1.0; };
  if (cfg.kind == "constant") {
    const double a = cfg.a;
    return [a](double, double) { return a; };
  }
  if (cfg.kind == "sine_product") {
    const double a = cfg.a, kx = cfg.kx, ky = cfg.ky;
    return [a, kx, ky](double x, double y) {
      return a * std::sin(kx * kPi * x) * std::sin(ky * kPi * y);
    };
  }
  if (cfg.kind == "gaussian") {
    const double a = cfg.a, x0 = cfg.x0, y0 = cfg.y0, w2 = cfg.width * cfg.width;
    return [a, x0, y0, w2](double x, double y) {
      const double dx = x - x0;
      const double dy = y - y0;
      return a * std::exp(-(dx * dx + dy * dy) / w2);
    };
  }
  throw std::invalid_argument("unknown space field kind: " + cfg.kind);
}

double ManufacturedSolution::eval(double t, double x, double y) const {
  double acc = 0.0;
  for (const Term& term : terms) acc += term.sigma(t) * term.w(x, y);
  return acc;
}

Problem make_problem(const ProblemConfig& cfg) {
  if (cfg.operators.empty()) {
    throw std::invalid_argument("problem needs at least one operator term");
  }
  Problem p;
  p.config = cfg;
  return p;
}

Problem make_heat_manufactured(int modes) {
  ProblemConfig cfg;
  cfg.name = "heat-manufactured";
  cfg.horizon = 1.0;
  cfg.alpha = 1.0;
  cfg.bound_m = 1.0;
  cfg.operators.push_back(OperatorConfig{TimeFnConfig{"one"}, 1.0, false, 0.0});
  for (int n = 1; n <= modes; ++n) {
    const double n3 = static_cast<double>(n) * n * n;
    const double amp = std::pow(static_cast<double>(n), -4.0);
    // Time-derivative part: d/dt [n^-4 sin(pi n^3 t)] = pi n^3 n^-4 cos(...).
    SourceConfig dt;
    dt.lambda = TimeFnConfig{"cos", kPi * n3, kPi * n3, 0.0};
    dt.f = SpaceFnConfig{"sine_product", amp, double(n), double(n), 0, 0, 1};
    cfg.sources.push_back(dt);
    // Diffusion part: -Laplacian contributes 2 pi^2 n^2 times the mode.
    SourceConfig diff;
    diff.lambda = TimeFnConfig{"sin", 1.0, kPi * n3, 0.0};
    diff.f = SpaceFnConfig{"sine_product", 2.0 * kPi * kPi * n * n * amp,
                           double(n), double(n), 0, 0, 1};
    cfg.sources.push_back(diff);
  }
  cfg.initial = SpaceFnConfig{};  // zero

  Problem p = make_problem(cfg);
  ManufacturedSolution exact;
  for (int n = 1; n <= modes; ++n) {
    const double n3 = static_cast<double>(n) * n * n;
    const double amp = std::pow(static_cast<double>(n), -4.0);
    ManufacturedSolution::Term term;
    term.sigma = make_time_fn(TimeFnConfig{"sin", amp, kPi * n3, 0.0});
    term.w = make_space_fn(
        SpaceFnConfig{"sine_product", 1.0, double(n), double(n), 0, 0, 1});
    exact.terms.push_back(std::move(term));
    // integral_0^1 sin^2(pi n^3 t) dt = 1/2; |sin(pi n x) sin(pi n y)|_H1^2
    // = pi^2 n^2 / 2; the modes are orthogonal in both factors.
    exact.l2h1_norm_sq += amp * amp * 0.5 * (kPi * kPi * n * n / 2.0);
  }
  p.exact = std::move(exact);
  return p;
}

Problem make_time_diffusion() {
  ProblemConfig cfg;
  cfg.name = "time-diffusion";
  cfg.horizon = 1.0;
  cfg.alpha = 1.0;
  cfg.bound_m = 3.0;  // max of sin(100 pi t) + 2
  cfg.operators.push_back(
      OperatorConfig{TimeFnConfig{"sin_plus_const", 1.0, 100.0 * kPi, 2.0}, 1.0,
                     false, 0.0});
  SourceConfig src;
  src.lambda = TimeFnConfig{"one"};
  src.f = SpaceFnConfig{"one"};
  cfg.sources.push_back(src);
  cfg.initial = SpaceFnConfig{};  // zero
  return make_problem(cfg);
}

Problem make_advection_diffusion() {
  ProblemConfig cfg;
  cfg.name = "advection-diffusion";
  cfg.horizon = 1.0;
  cfg.alpha = 1.0;
  // Operator bound: |(mu grad w, grad v) + (c . grad w, v)| with
  // ||c||_inf = pi*sqrt(2) and the Poincare constant 1/(pi*sqrt(2)) on the
  // unit square gives ||A|| <= mu + 1 = 1.1.
  cfg.bound_m = 1.1;
  cfg.operators.push_back(
      OperatorConfig{TimeFnConfig{"one"}, 0.1, true, 2.0 * kPi});
  cfg.initial = SpaceFnConfig{"gaussian", 1.0, 1, 1, 2.0 / 3.0, 0.5, 0.07};
  return make_problem(cfg);
}

Problem problem_by_name(const std::string& name) {
  if (name == "heat-manufactured") return make_heat_manufactured();
  if (name == "time-diffusion") return make_time_diffusion();
  if (name == "advection-diffusion") return make_advection_diffusion();
  if (name == "zero") {
    // Heat operator with no source and zero initial data; the solution is
    // identically zero, exercising the trivial-data solver path.
    ProblemConfig cfg;
    cfg.name = "zero";
    cfg.operators.push_back({});
    return make_problem(cfg);
  }
  throw std::invalid_argument("unknown problem: " + name);
}

double eval_exact(const Problem& p, double t, double x, double y) {
  if (!p.exact.has_value()) {
    throw std::logic_error("problem has no closed-form solution");
  }
  return p.exact->eval(t, x, y);
}

SpaceDiscretization discretize_space(const Problem& p, index_t cells_per_side) {
  SpaceDiscretization d{QuadMesh(cells_per_side), nullptr, nullptr, nullptr, {}, {}, {}};
  d.mass = std::make_shared<SparseMatrix>(assemble_mass(d.mesh));
  d.stiffness = std::make_shared<SparseMatrix>(assemble_stiffness(d.mesh));
  d.stiffness_solver = std::make_shared<SpdFactorization>(*d.stiffness);
  for (const OperatorConfig& op : p.config.operators) {
    if (!op.rotation && op.diffusion == 1.0) {
      d.operators.push_back(d.stiffness);  // exact alias
      continue;
    }
    if (!op.rotation) {
      SparseMatrix zero =
          SparseMatrix::from_triplets(d.mesh.interior_nodes(),
                                      d.mesh.interior_nodes(), {});
      d.operators.push_back(std::make_shared<SparseMatrix>(
          zero.plus_scaled(op.diffusion, *d.stiffness)));
      continue;
    }
    const double scale = op.rotation_scale;
    const VelocityField vel = [scale](double x, double y) {
      return std::array<double, 2>{scale * (0.5 - y), scale * (x - 0.5)};
    };
    SparseMatrix adv = assemble_advection(d.mesh, vel);
    d.operators.push_back(std::make_shared<SparseMatrix>(
        adv.plus_scaled(op.diffusion, *d.stiffness)));
  }
  for (const SourceConfig& src : p.config.sources) {
    d.loads.push_back(assemble_load(d.mesh, make_space_fn(src.f)));
  }
  d.initial_moments = project_initial(d.mesh, make_space_fn(p.config.initial));
  return d;
}

TimeDiscretization discretize_time(const Problem& p, index_t elements) {
  TimeDiscretization d{TimeGrid(elements, p.horizon()),
                       {},
                       {},
                       {},
                       {},
                       {}};
  d.base = assemble_p1_matrices(d.grid);
  const std::size_t P = p.num_operators();
  const std::size_t Q = p.num_sources();
  std::vector<TimeFn> mus;
  mus.reserve(P);
  for (const OperatorConfig& op : p.config.operators) {
    mus.push_back(make_time_fn(op.mu));
  }
  std::vector<TimeFn> lambdas;
  lambdas.reserve(Q);
  for (const SourceConfig& src : p.config.sources) {
    lambdas.push_back(make_time_fn(src.lambda));
  }
  d.weighted_mass.resize(P);
  d.weighted_derivative.reserve(P);
  d.weighted_moments.resize(P);
  for (std::size_t a = 0; a < P; ++a) {
    d.weighted_mass[a].reserve(P);
    for (std::size_t b = 0; b < P; ++b) {
      d.weighted_mass[a].push_back(assemble_weighted_mass(d.grid, mus[a], mus[b]));
    }
    d.weighted_derivative.push_back(assemble_weighted_derivative(d.grid, mus[a]));
    d.weighted_moments[a].reserve(Q);
    for (std::size_t q = 0; q < Q; ++q) {
      d.weighted_moments[a].push_back(
          assemble_weighted_moments(d.grid, mus[a], lambdas[q]));
    }
  }
  d.derivative_moments.reserve(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    d.derivative_moments.push_back(assemble_derivative_moments(d.grid, lambdas[q]));
  }
  return d;
}

}  // namespace parasol
