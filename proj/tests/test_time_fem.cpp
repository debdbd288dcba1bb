#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "parasol/time_fem.hpp"
#include "support/dense.hpp"

using namespace parasol;
using testing::Dense;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent 5-point Gauss-Legendre rule on [a, b] (nodes/weights from the
// standard closed forms, coded separately from the library's rule).
double gauss5_ref(const TimeFn& f, double a, double b) {
  const double n1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double n2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const double w0 = 128.0 / 225.0;
  const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  const double x[5] = {-n2, -n1, 0.0, n1, n2};
  const double w[5] = {w2, w1, w0, w1, w2};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int g = 0; g < 5; ++g) acc += w[g] * f(mid + half * x[g]);
  return half * acc;
}

double osc(double t) { return std::sin(100.0 * kPi * t) + 2.0; }

}  // namespace

TEST_CASE("grid accessors") {
  const TimeGrid grid(8, 2.0);
  CHECK(grid.tau() == 0.25);
  CHECK(grid.nodes() == 9);
  CHECK(grid.node(0) == 0.0);
  CHECK(grid.node(8) == 2.0);
}

TEST_CASE("closed-form P1 matrices") {
  const TimeGrid grid(4);
  const double tau = grid.tau();
  const TimeMatrices tm = assemble_p1_matrices(grid);

  for (index_t l = 0; l < 5; ++l) {
    const bool end = (l == 0 || l == 4);
    CHECK(tm.stiffness.coeff(l, l) ==
          doctest::Approx((end ? 1.0 : 2.0) / tau).epsilon(1e-15));
    CHECK(tm.mass.coeff(l, l) ==
          doctest::Approx((end ? 1.0 : 2.0) * tau / 3.0).epsilon(1e-15));
  }
  for (index_t l = 0; l + 1 < 5; ++l) {
    CHECK(tm.stiffness.coeff(l, l + 1) == doctest::Approx(-1.0 / tau).epsilon(1e-15));
    CHECK(tm.mass.coeff(l, l + 1) == doctest::Approx(tau / 6.0).epsilon(1e-15));
    CHECK(tm.derivative.coeff(l, l + 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tm.derivative.coeff(l + 1, l) == doctest::Approx(-0.5).epsilon(1e-15));
  }
  CHECK(tm.derivative.coeff(0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(tm.derivative.coeff(4, 4) == doctest::Approx(0.5).epsilon(1e-15));
  for (index_t l = 1; l + 1 < 5; ++l) CHECK(tm.derivative.coeff(l, l) == 0.0);

  CHECK(tm.initial_outer.coeff(0, 0) == 1.0);
  CHECK(tm.initial_outer.coeff(1, 1) == 0.0);
  CHECK(tm.initial_outer.coeff(0, 1) == 0.0);

  CHECK(tm.stiffness.max_asymmetry() == 0.0);
  CHECK(tm.mass.max_asymmetry() == 0.0);
}

TEST_CASE("discrete integration by parts: E + E^T + initial == terminal") {
  for (index_t n : {index_t{2}, index_t{8}, index_t{64}}) {
    const TimeGrid grid(n);
    const TimeMatrices tm = assemble_p1_matrices(grid);
    TriDiagMatrix lhs = tm.derivative;
    lhs.add_scaled(1.0, tm.derivative.transposed());
    lhs.add_scaled(1.0, tm.initial_outer);
    const TriDiagMatrix rhs = terminal_outer(grid);
    CHECK(testing::from_tridiag(lhs).max_abs_diff(testing::from_tridiag(rhs)) ==
          0.0);
  }
}

TEST_CASE("weighted assembly reduces to the closed forms") {
  const TimeGrid grid(5);
  const double tau = grid.tau();
  const TimeMatrices tm = assemble_p1_matrices(grid);
  const TimeFn one = [](double) { return 1.0; };
  const TimeFn ramp = [](double t) { return t; };

  const TriDiagMatrix m11 = assemble_weighted_mass(grid, one, one);
  CHECK(testing::from_tridiag(m11).max_abs_diff(testing::from_tridiag(tm.mass)) <=
        1e-16);
  const TriDiagMatrix e1 = assemble_weighted_derivative(grid, one);
  CHECK(testing::from_tridiag(e1).max_abs_diff(
            testing::from_tridiag(tm.derivative)) <= 1e-16);

  // mu = t weighted mass: interior diagonal t_l * 2tau/3, off-diagonal
  // (t_l + tau/2) * tau/6, first diagonal tau^2/12 (all exact for Gauss-5).
  const TriDiagMatrix mt = assemble_weighted_mass(grid, ramp, one);
  CHECK(mt.coeff(2, 2) == doctest::Approx(grid.node(2) * 2.0 * tau / 3.0).epsilon(1e-14));
  CHECK(mt.coeff(2, 3) ==
        doctest::Approx((grid.node(2) + tau / 2.0) * tau / 6.0).epsilon(1e-14));
  CHECK(mt.coeff(0, 0) == doctest::Approx(tau * tau / 12.0).epsilon(1e-14));
  CHECK(mt.max_asymmetry() == 0.0);

  // Split weights multiply: weighted_mass(t, 1) == weighted_mass(1, t).
  const TriDiagMatrix mt2 = assemble_weighted_mass(grid, one, ramp);
  CHECK(testing::from_tridiag(mt).max_abs_diff(testing::from_tridiag(mt2)) == 0.0);

  // Derivative moments for lambda = 1 telescope to the endpoint values.
  const auto dm1 = assemble_derivative_moments(grid, one);
  CHECK(dm1.front() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(dm1.back() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t l = 1; l + 1 < dm1.size(); ++l) {
    CHECK(dm1[l] == doctest::Approx(0.0));
  }
  // lambda = t: integration by parts gives -tau/2, -tau, ..., T - tau/2.
  const auto dmt = assemble_derivative_moments(grid, ramp);
  CHECK(dmt.front() == doctest::Approx(-tau / 2.0).epsilon(1e-14));
  CHECK(dmt[2] == doctest::Approx(-tau).epsilon(1e-14));
  CHECK(dmt.back() == doctest::Approx(1.0 - tau / 2.0).epsilon(1e-14));

  const auto wm = assemble_weighted_moments(grid, one, one);
  CHECK(wm.front() == doctest::Approx(tau / 2.0).epsilon(1e-15));
  CHECK(wm[1] == doctest::Approx(tau).epsilon(1e-15));
  CHECK(wm.back() == doctest::Approx(tau / 2.0).epsilon(1e-15));

  const auto iu = initial_unit(grid);
  CHECK(iu[0] == 1.0);
  for (std::size_t l = 1; l < iu.size(); ++l) CHECK(iu[l] == 0.0);
}

TEST_CASE("piecewise-constant test blocks: structure and row values") {
  for (const bool refined : {false, true}) {
    const TimeGrid grid(4);
    const double tau = grid.tau();
    const auto mp = pg_test_mass(grid, refined);
    const index_t rows = refined ? 8 : 4;
    REQUIRE(static_cast<index_t>(mp.size()) == rows);
    for (double v : mp) CHECK(v == (refined ? tau / 2.0 : tau));

    const PgBlock e = assemble_pg_derivative(grid, refined);
    CHECK(e.rows == rows);
    CHECK(e.cols == 5);
    const double ev = refined ? 0.5 : 1.0;
    for (index_t r = 0; r < rows; ++r) {
      CHECK(e.row[static_cast<std::size_t>(r)].v0 == doctest::Approx(-ev).epsilon(1e-15));
      CHECK(e.row[static_cast<std::size_t>(r)].v1 == doctest::Approx(ev).epsilon(1e-15));
      CHECK(e.row[static_cast<std::size_t>(r)].col0 == (refined ? r / 2 : r));
    }

    // Row values of the weighted block against an independent Gauss rule.
    const PgBlock m = assemble_pg_weighted_mass(grid, osc, refined);
    const double test_len = refined ? tau / 2.0 : tau;
    for (index_t r = 0; r < rows; ++r) {
      const double a = static_cast<double>(r) * test_len;
      const double b = a + test_len;
      const index_t l = m.row[static_cast<std::size_t>(r)].col0;
      const double t0 = grid.node(l);
      const double expect0 = gauss5_ref(
          [&](double t) { return osc(t) * (1.0 - (t - t0) / tau); }, a, b);
      const double expect1 = gauss5_ref(
          [&](double t) { return osc(t) * ((t - t0) / tau); }, a, b);
      CHECK(m.row[static_cast<std::size_t>(r)].v0 ==
            doctest::Approx(expect0).epsilon(1e-13));
      CHECK(m.row[static_cast<std::size_t>(r)].v1 ==
            doctest::Approx(expect1).epsilon(1e-13));
    }

    const auto src = assemble_pg_source_moments(
        grid, [](double) { return 1.0; }, refined);
    for (double v : src) CHECK(v == doctest::Approx(test_len).epsilon(1e-15));

    // The constant-in-time test functions annihilate the derivative pairing;
    // the vector is assembled as literal zeros.
    const auto dzero = assemble_pg_derivative_moments(grid, osc, refined);
    REQUIRE(static_cast<index_t>(dzero.size()) == rows);
    for (double v : dzero) CHECK(v == 0.0);
  }
}

TEST_CASE("normal products: known identities for N in {2,8,64}") {
  for (index_t n : {index_t{2}, index_t{8}, index_t{64}}) {
    for (const bool refined : {false, true}) {
      const TimeGrid grid(n);
      const double tau = grid.tau();
      const TimeMatrices tm = assemble_p1_matrices(grid);
      const auto mp = pg_test_mass(grid, refined);
      const PgBlock e = assemble_pg_derivative(grid, refined);

      // (E^PG)^T (M^P)^-1 E^PG equals the P1 stiffness on both test meshes.
      const TriDiagMatrix first = pg_normal_product(e, mp, e);
      CHECK(testing::from_tridiag(first).max_abs_diff(
                testing::from_tridiag(tm.stiffness)) <= 1e-12 / tau);

      const PgBlock m1 = assemble_pg_weighted_mass(
          grid, [](double) { return 1.0; }, refined);
      if (!refined) {
        // Same-mesh variant: (M^PG)^T (M^P)^-1 E^PG recovers the first-order
        // P1 matrix E exactly (the trapezoidal pairing).
        const TriDiagMatrix cross = pg_normal_product(m1, mp, e);
        CHECK(testing::from_tridiag(cross).max_abs_diff(
                  testing::from_tridiag(tm.derivative)) <= 1e-13);

        // Mass defect: M - (M^PG)^T (M^P)^-1 M^PG == (tau^2/12) * stiffness,
        // hence positive semidefinite.
        const TriDiagMatrix prod = pg_normal_product(m1, mp, m1);
        TriDiagMatrix gap = tm.mass;
        gap.add_scaled(-1.0, prod);
        TriDiagMatrix expect = TriDiagMatrix::zero(grid.nodes());
        expect.add_scaled(tau * tau / 12.0, tm.stiffness);
        CHECK(testing::from_tridiag(gap).max_abs_diff(
                  testing::from_tridiag(expect)) <= 1e-15);
        CHECK(testing::min_sym_eigenvalue(testing::from_tridiag(gap)) >= -1e-12);
      }

      // Transposing the product is exact, even with oscillatory weights.
      const PgBlock mo = assemble_pg_weighted_mass(grid, osc, refined);
      const TriDiagMatrix pq = pg_normal_product(mo, mp, e);
      const TriDiagMatrix qp = pg_normal_product(e, mp, mo);
      CHECK(testing::from_tridiag(pq.transposed())
                .max_abs_diff(testing::from_tridiag(qp)) == 0.0);

      // P^T (M^P)^-1 d against a direct row-sum reference.
      const auto d = assemble_pg_source_moments(grid, osc, refined);
      const auto v = pg_normal_vector(mo, mp, d);
      std::vector<double> ref(static_cast<std::size_t>(grid.nodes()), 0.0);
      for (index_t r = 0; r < mo.rows; ++r) {
        const auto& row = mo.row[static_cast<std::size_t>(r)];
        const double s = d[static_cast<std::size_t>(r)] / mp[static_cast<std::size_t>(r)];
        ref[static_cast<std::size_t>(row.col0)] += row.v0 * s;
        ref[static_cast<std::size_t>(row.col0) + 1] += row.v1 * s;
      }
      CHECK(testing::rel_l2_error(v, ref) <= 1e-14);
    }
  }
}

TEST_CASE("time prolongation is the exact nested embedding") {
  const TimeGrid coarse(4);
  const TimeGrid fine(8);
  const TimeMatrices tc = assemble_p1_matrices(coarse);
  const TimeMatrices tf = assemble_p1_matrices(fine);

  Dense p(fine.nodes(), coarse.nodes());
  for (index_t j = 0; j < coarse.nodes(); ++j) {
    std::vector<double> unit(static_cast<std::size_t>(coarse.nodes()));
    unit[static_cast<std::size_t>(j)] = 1.0;
    const auto col = prolong_time(coarse, unit);
    REQUIRE(static_cast<index_t>(col.size()) == fine.nodes());
    for (index_t i = 0; i < fine.nodes(); ++i) {
      p(i, j) = col[static_cast<std::size_t>(i)];
    }
  }
  const Dense pt = p.transposed();
  CHECK((pt * testing::from_tridiag(tf.stiffness) * p)
            .max_abs_diff(testing::from_tridiag(tc.stiffness)) <= 1e-13);
  CHECK((pt * testing::from_tridiag(tf.mass) * p)
            .max_abs_diff(testing::from_tridiag(tc.mass)) <= 1e-15);

  std::vector<double> v(static_cast<std::size_t>(coarse.nodes()));
  v[2] = 1.0;
  const auto fv = prolong_time(coarse, v);
  CHECK(fv[4] == 1.0);
  CHECK(fv[3] == 0.5);
  CHECK(fv[5] == 0.5);
  CHECK(fv[2] == 0.0);
}
