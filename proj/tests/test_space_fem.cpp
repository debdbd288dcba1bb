#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "parasol/space_fem.hpp"
#include "support/dense.hpp"

using namespace parasol;
using testing::Dense;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form: integral of sin(k pi x) against the 1D hat at x_i, width h, is
// [4 sin^2(k pi h / 2) / (k^2 pi^2 h)] sin(k pi x_i).
double hat_sine_moment(int k, double h, double xi) {
  const double s = std::sin(k * kPi * h / 2.0);
  return 4.0 * s * s / (k * k * kPi * kPi * h) * std::sin(k * kPi * xi);
}

}  // namespace

TEST_CASE("mesh indexing") {
  const QuadMesh mesh(8);
  CHECK(mesh.h() == 0.125);
  CHECK(mesh.nodes_per_side() == 7);
  CHECK(mesh.interior_nodes() == 49);
  CHECK(mesh.index(1, 1) == 0);
  CHECK(mesh.index(2, 1) == 1);
  CHECK(mesh.index(1, 2) == 7);
  CHECK(mesh.is_interior(7, 7));
  CHECK_FALSE(mesh.is_interior(0, 3));
  CHECK_FALSE(mesh.is_interior(3, 8));
}

TEST_CASE("single-node mesh: mass 1/9, stiffness 8/3") {
  const QuadMesh mesh(2);
  const SparseMatrix m = assemble_mass(mesh);
  const SparseMatrix k = assemble_stiffness(mesh);
  REQUIRE(m.rows() == 1);
  CHECK(m.coeff(0, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(k.coeff(0, 0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("mass and stiffness stencils on a 4x4 mesh") {
  const QuadMesh mesh(4);
  const double h = mesh.h();
  const SparseMatrix m = assemble_mass(mesh);
  const SparseMatrix k = assemble_stiffness(mesh);

  const index_t c = mesh.index(2, 2);   // full interior stencil
  const index_t r = mesh.index(3, 2);   // horizontal neighbour
  const index_t u = mesh.index(2, 3);   // vertical neighbour
  const index_t d = mesh.index(3, 3);   // diagonal neighbour
  CHECK(m.coeff(c, c) == doctest::Approx(4.0 * h * h / 9.0).epsilon(1e-14));
  CHECK(m.coeff(c, r) == doctest::Approx(h * h / 9.0).epsilon(1e-14));
  CHECK(m.coeff(c, u) == doctest::Approx(h * h / 9.0).epsilon(1e-14));
  CHECK(m.coeff(c, d) == doctest::Approx(h * h / 36.0).epsilon(1e-14));

  // The bilinear Laplacian stencil is mesh-size independent: diagonal 8/3,
  // every one of the 8 neighbours -1/3.
  CHECK(k.coeff(c, c) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(k.coeff(c, r) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  CHECK(k.coeff(c, u) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  CHECK(k.coeff(c, d) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));

  CHECK(m.max_asymmetry() == 0.0);
  CHECK(k.max_asymmetry() == 0.0);
  CHECK(testing::min_sym_eigenvalue(testing::from_sparse(m)) > 0.0);
  CHECK(testing::min_sym_eigenvalue(testing::from_sparse(k)) > 0.0);
  CHECK(m.bandwidth() == mesh.nodes_per_side() + 1);
}

TEST_CASE("sine-product loads match the closed form") {
  const QuadMesh mesh(4);
  const double h = mesh.h();
  for (const auto& [kx, ky] : {std::pair{1, 1}, std::pair{2, 3}}) {
    const auto load = assemble_load(mesh, [kx = kx, ky = ky](double x, double y) {
      return std::sin(kx * kPi * x) * std::sin(ky * kPi * y);
    });
    for (index_t j = 1; j <= mesh.nodes_per_side(); ++j) {
      for (index_t i = 1; i <= mesh.nodes_per_side(); ++i) {
        const double expect =
            hat_sine_moment(kx, h, i * h) * hat_sine_moment(ky, h, j * h);
        const double got = load[static_cast<std::size_t>(mesh.index(i, j))];
        CHECK(got == doctest::Approx(expect).epsilon(5e-8));
      }
    }
  }

  // Single-node mesh: the frozen value 16/pi^4.
  const auto load2 = assemble_load(QuadMesh(2), [](double x, double y) {
    return std::sin(kPi * x) * std::sin(kPi * y);
  });
  CHECK(load2[0] == doctest::Approx(16.0 / (kPi * kPi * kPi * kPi)).epsilon(1e-9));
}

TEST_CASE("advection matrix: skew-symmetric for divergence-free velocities") {
  const QuadMesh mesh(8);
  // Rigid rotation about the square's center.
  const SparseMatrix c = assemble_advection(mesh, [](double x, double y) {
    return std::array<double, 2>{0.5 - y, x - 0.5};
  });
  const Dense dc = testing::from_sparse(c);
  CHECK((dc + dc.transposed()).max_abs() <= 1e-14);

  // Constant velocity (1, 0): neighbour coupling is the 1D derivative value
  // 1/2 times the 1D mass diagonal 2h/3.
  const SparseMatrix cx = assemble_advection(
      mesh, [](double, double) { return std::array<double, 2>{1.0, 0.0}; });
  const index_t a = mesh.index(3, 4);
  const index_t b = mesh.index(4, 4);
  CHECK(cx.coeff(a, b) == doctest::Approx(mesh.h() / 3.0).epsilon(1e-13));
  CHECK(cx.coeff(b, a) == doctest::Approx(-mesh.h() / 3.0).epsilon(1e-13));
  CHECK(cx.coeff(a, a) == doctest::Approx(0.0));
  const Dense dcx = testing::from_sparse(cx);
  CHECK((dcx + dcx.transposed()).max_abs() <= 1e-14);
}

TEST_CASE("initial moments: polynomials integrate exactly") {
  const QuadMesh mesh(4);
  const double h = mesh.h();
  const auto ones = project_initial(mesh, [](double, double) { return 1.0; });
  for (double v : ones) CHECK(v == doctest::Approx(h * h).epsilon(1e-15));

  const auto xs = project_initial(mesh, [](double x, double) { return x; });
  for (index_t j = 1; j <= mesh.nodes_per_side(); ++j) {
    for (index_t i = 1; i <= mesh.nodes_per_side(); ++i) {
      CHECK(xs[static_cast<std::size_t>(mesh.index(i, j))] ==
            doctest::Approx(h * h * (i * h)).epsilon(1e-14));
    }
  }
}

TEST_CASE("gaussian initial datum: total moment mass approaches pi w^2") {
  const double w = 0.07;
  const QuadMesh mesh(32);
  const auto moments = project_initial(mesh, [w](double x, double y) {
    const double dx = x - 2.0 / 3.0;
    const double dy = y - 0.5;
    return std::exp(-(dx * dx + dy * dy) / (w * w));
  });
  double total = 0.0;
  for (double v : moments) total += v;
  CHECK(total == doctest::Approx(kPi * w * w).epsilon(1e-6));
}

TEST_CASE("nodal values round-trip through moments") {
  const QuadMesh mesh(4);
  const SparseMatrix m = assemble_mass(mesh);
  const auto w = nodal_interpolant(
      mesh, [](double x, double y) { return x * (1 - x) * std::sin(y); });
  CHECK(w[static_cast<std::size_t>(mesh.index(1, 2))] ==
        doctest::Approx(0.25 * 0.75 * std::sin(0.5)).epsilon(1e-15));
  const auto moments = m.apply(w);
  const auto back = nodal_from_moments(mesh, moments);
  CHECK(testing::rel_l2_error(back, w) <= 1e-12);
}

TEST_CASE("prolongation is the exact nested-space embedding") {
  const QuadMesh coarse(4);
  const QuadMesh fine(8);

  // Materialize P from its action and verify the Galerkin identities
  // P^T K_f P = K_c and P^T M_f P = M_c, which hold exactly for nested
  // bilinear spaces.
  const index_t nc = coarse.interior_nodes();
  const index_t nf = fine.interior_nodes();
  Dense p(nf, nc);
  for (index_t j = 0; j < nc; ++j) {
    std::vector<double> unit(static_cast<std::size_t>(nc));
    unit[static_cast<std::size_t>(j)] = 1.0;
    const auto col = prolong_space(coarse, unit);
    REQUIRE(static_cast<index_t>(col.size()) == nf);
    for (index_t i = 0; i < nf; ++i) p(i, j) = col[static_cast<std::size_t>(i)];
  }
  const Dense kf = testing::from_sparse(assemble_stiffness(fine));
  const Dense kc = testing::from_sparse(assemble_stiffness(coarse));
  const Dense mf = testing::from_sparse(assemble_mass(fine));
  const Dense mc = testing::from_sparse(assemble_mass(coarse));
  CHECK((p.transposed() * kf * p).max_abs_diff(kc) <= 1e-13);
  CHECK((p.transposed() * mf * p).max_abs_diff(mc) <= 1e-15);

  // Spot-check the stencil: copied at even nodes, averaged at odd ones,
  // boundary values treated as zero.
  std::vector<double> v(static_cast<std::size_t>(nc));
  v[static_cast<std::size_t>(coarse.index(1, 1))] = 1.0;
  const auto fv = prolong_space(coarse, v);
  CHECK(fv[static_cast<std::size_t>(fine.index(2, 2))] == 1.0);
  CHECK(fv[static_cast<std::size_t>(fine.index(1, 2))] == 0.5);
  CHECK(fv[static_cast<std::size_t>(fine.index(2, 1))] == 0.5);
  CHECK(fv[static_cast<std::size_t>(fine.index(1, 1))] == 0.25);
  CHECK(fv[static_cast<std::size_t>(fine.index(3, 3))] == 0.25);
  CHECK(fv[static_cast<std::size_t>(fine.index(4, 2))] == 0.0);
}
