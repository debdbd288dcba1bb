#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "parasol/problems.hpp"
#include "support/dense.hpp"

using namespace parasol;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("time coefficient built-ins") {
  CHECK(make_time_fn({"one", 7, 0, 0})(0.3) == 1.0);
  CHECK(make_time_fn({"constant", 2.5, 0, 0})(0.9) == 2.5);
  CHECK(make_time_fn({"sin", 2.0, 3.0, 0})(0.4) ==
        doctest::Approx(2.0 * std::sin(1.2)));
  CHECK(make_time_fn({"cos", 2.0, 3.0, 0})(0.4) ==
        doctest::Approx(2.0 * std::cos(1.2)));
  CHECK(make_time_fn({"sin_plus_const", 1.0, 100.0 * kPi, 2.0})(0.25) ==
        doctest::Approx(std::sin(25.0 * kPi) + 2.0));
  CHECK_THROWS_AS(make_time_fn({"cubic", 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("space field built-ins") {
  CHECK(make_space_fn({.kind = "zero"})(0.3, 0.7) == 0.0);
  CHECK(make_space_fn({.kind = "one"})(0.3, 0.7) == 1.0);
  CHECK(make_space_fn({.kind = "constant", .a = -3.0})(0.1, 0.2) == -3.0);
  CHECK(make_space_fn({.kind = "sine_product", .a = 2.0, .kx = 1, .ky = 3})(
            0.5, 0.25) ==
        doctest::Approx(2.0 * std::sin(kPi / 2) * std::sin(3 * kPi / 4)));
  const auto g = make_space_fn(
      {.kind = "gaussian", .a = 1.0, .x0 = 2.0 / 3.0, .y0 = 0.5, .width = 0.07});
  CHECK(g(2.0 / 3.0, 0.5) == 1.0);
  CHECK(g(2.0 / 3.0 + 0.07, 0.5) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(make_space_fn({.kind = "spline"}), std::invalid_argument);
}

TEST_CASE("manufactured heat problem") {
  const Problem p = make_heat_manufactured();
  CHECK(p.name() == "heat-manufactured");
  CHECK(p.horizon() == 1.0);
  CHECK(p.alpha() == 1.0);
  CHECK(p.bound_m() == 1.0);
  CHECK(p.num_operators() == 1);
  CHECK(p.num_sources() == 20);  // time-derivative and diffusion parts per mode
  REQUIRE(p.exact.has_value());

  // Point value of the separated solution against the direct series.
  const double t = 0.37, x = 0.21, y = 0.83;
  double ref = 0.0;
  for (int n = 1; n <= 10; ++n) {
    ref += std::pow(n, -4.0) * std::sin(kPi * n * n * n * t) *
           std::sin(kPi * n * x) * std::sin(kPi * n * y);
  }
  CHECK(eval_exact(p, t, x, y) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(eval_exact(p, 0.0, x, y) == 0.0);  // consistent zero initial datum

  // Closed-form squared L2(H1) norm: modes are orthogonal, each contributes
  // n^-8 * 1/2 * (pi^2 n^2 / 2).
  double norm = 0.0;
  for (int n = 1; n <= 10; ++n) {
    norm += std::pow(n, -8.0) * 0.5 * kPi * kPi * n * n / 2.0;
  }
  CHECK(p.exact->l2h1_norm_sq == doctest::Approx(norm).epsilon(1e-14));

  // Source terms reproduce u_t - Laplacian u at a sample point.
  const auto fsum = [&](double tt, double xx, double yy) {
    double acc = 0.0;
    for (const SourceConfig& s : p.config.sources) {
      acc += make_time_fn(s.lambda)(tt) * make_space_fn(s.f)(xx, yy);
    }
    return acc;
  };
  double expect = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double n3 = n * n * n;
    const double w = std::sin(kPi * n * x) * std::sin(kPi * n * y);
    expect += std::pow(n, -4.0) *
              (kPi * n3 * std::cos(kPi * n3 * t) +
               2.0 * kPi * kPi * n * n * std::sin(kPi * n3 * t)) *
              w;
  }
  CHECK(fsum(t, x, y) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("oscillating-diffusion and advection problems") {
  const Problem p2 = make_time_diffusion();
  CHECK(p2.bound_m() == 3.0);
  CHECK(p2.num_operators() == 1);
  CHECK(p2.num_sources() == 1);
  CHECK_FALSE(p2.exact.has_value());
  CHECK_THROWS_AS(eval_exact(p2, 0.1, 0.2, 0.3), std::logic_error);
  const auto mu = make_time_fn(p2.config.operators[0].mu);
  CHECK(mu(0.005) == doctest::Approx(std::sin(0.5 * kPi) + 2.0));

  const Problem p3 = make_advection_diffusion();
  CHECK(p3.num_sources() == 0);
  CHECK(p3.config.operators[0].diffusion == 0.1);
  CHECK(p3.config.operators[0].rotation);
  CHECK(p3.config.operators[0].rotation_scale == doctest::Approx(2.0 * kPi));
  CHECK(p3.config.initial.kind == "gaussian");
  CHECK_FALSE(p3.exact.has_value());
}

TEST_CASE("problem lookup") {
  CHECK(problem_by_name("heat-manufactured").name() == "heat-manufactured");
  CHECK(problem_by_name("time-diffusion").name() == "time-diffusion");
  CHECK(problem_by_name("advection-diffusion").name() == "advection-diffusion");
  const Problem z = problem_by_name("zero");
  CHECK(z.num_sources() == 0);
  CHECK(z.config.initial.kind == "zero");
  CHECK(z.num_operators() == 1);
  CHECK_THROWS_AS(problem_by_name("wave"), std::invalid_argument);
  CHECK_THROWS_AS(make_problem(ProblemConfig{}), std::invalid_argument);
}

TEST_CASE("space discretization: aliasing and operator sums") {
  // Pure unit diffusion shares the stiffness matrix object.
  const Problem heat = make_heat_manufactured();
  const auto sd = discretize_space(heat, 4);
  REQUIRE(sd.operators.size() == 1);
  CHECK(sd.operators[0].get() == sd.stiffness.get());
  CHECK(sd.loads.size() == 20);
  for (double v : sd.initial_moments) CHECK(v == 0.0);
  CHECK(sd.mesh.cells_per_side == 4);
  CHECK(sd.mass->rows() == 9);
  CHECK(sd.stiffness_solver->dim() == 9);

  // Scaled diffusion plus rotation: a distinct matrix equal to
  // 0.1 * stiffness + advection.
  const Problem adv = make_advection_diffusion();
  const auto sda = discretize_space(adv, 4);
  REQUIRE(sda.operators.size() == 1);
  CHECK(sda.operators[0].get() != sda.stiffness.get());
  const SparseMatrix rot = assemble_advection(sda.mesh, [](double x, double y) {
    return std::array<double, 2>{2.0 * kPi * (0.5 - y), 2.0 * kPi * (x - 0.5)};
  });
  testing::Dense expect = testing::from_sparse(*sda.stiffness);
  expect.scale(0.1);
  expect = expect + testing::from_sparse(rot);
  CHECK(testing::from_sparse(*sda.operators[0]).max_abs_diff(expect) <= 1e-14);

  // Gaussian initial datum yields nonzero moments.
  double total = 0.0;
  for (double v : sda.initial_moments) total += v;
  CHECK(total > 0.0);
}

TEST_CASE("time discretization: weighted blocks match direct assembly") {
  const Problem p2 = make_time_diffusion();
  const auto td = discretize_time(p2, 8);
  CHECK(td.grid.elements == 8);
  REQUIRE(td.weighted_mass.size() == 1);
  REQUIRE(td.weighted_mass[0].size() == 1);
  REQUIRE(td.weighted_derivative.size() == 1);
  REQUIRE(td.derivative_moments.size() == 1);
  REQUIRE(td.weighted_moments.size() == 1);
  REQUIRE(td.weighted_moments[0].size() == 1);

  const auto mu = make_time_fn(p2.config.operators[0].mu);
  const auto ref_mm = assemble_weighted_mass(td.grid, mu, mu);
  CHECK(testing::from_tridiag(td.weighted_mass[0][0])
            .max_abs_diff(testing::from_tridiag(ref_mm)) == 0.0);
  const auto ref_ed = assemble_weighted_derivative(td.grid, mu);
  CHECK(testing::from_tridiag(td.weighted_derivative[0])
            .max_abs_diff(testing::from_tridiag(ref_ed)) == 0.0);
  const auto one = make_time_fn({"one", 0, 0, 0});
  const auto ref_dm = assemble_derivative_moments(td.grid, one);
  CHECK(testing::rel_l2_error(td.derivative_moments[0], ref_dm) == 0.0);
  const auto ref_wm = assemble_weighted_moments(td.grid, mu, one);
  CHECK(testing::rel_l2_error(td.weighted_moments[0][0], ref_wm) == 0.0);

  CHECK(td.base.mass.coeff(1, 1) == doctest::Approx(2.0 / (3.0 * 8.0)));
}
