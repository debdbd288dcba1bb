#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "parasol/greedy.hpp"
#include "parasol/separated.hpp"
#include "parasol/space_fem.hpp"
#include "parasol/time_fem.hpp"
#include "support/dense.hpp"

using namespace parasol;
using testing::Dense;

namespace {

std::vector<double> random_vec(std::uint64_t seed, index_t n, std::uint64_t s) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        2.0 * uniform01(seed, s, static_cast<std::uint64_t>(i)) - 1.0;
  }
  return v;
}

SeparatedVector random_separated(index_t ns, index_t nt, index_t rank,
                                 std::uint64_t seed) {
  SeparatedVector u(ns, nt);
  for (index_t j = 0; j < rank; ++j) {
    u.append(random_vec(seed, ns, 2 * static_cast<std::uint64_t>(j)),
             random_vec(seed, nt, 2 * static_cast<std::uint64_t>(j) + 1));
  }
  return u;
}

}  // namespace

TEST_CASE("separated vector storage and scaling") {
  SeparatedVector u(3, 2);
  CHECK(u.rank() == 0);
  u.append(std::vector<double>{1.0, 2.0, 3.0}, std::vector<double>{4.0, 5.0});
  u.append_scaled(-2.0, std::vector<double>{1.0, 0.0, 0.0},
                  std::vector<double>{1.0, 1.0});
  CHECK(u.rank() == 2);
  CHECK(u.entry(1, 0) == 8.0);
  CHECK(u.entry(0, 1) == 5.0 - 2.0);
  CHECK(u.space_col(1)[0] == -2.0);  // the scalar lands in the space factor
  CHECK(u.time_col(1)[0] == 1.0);

  SeparatedVector w(3, 2);
  w.append_all_scaled(0.5, u);
  CHECK(w.rank() == 2);
  CHECK(w.entry(1, 0) == 4.0);

  const auto flat = testing::materialize(u);
  CHECK(flat[1 * 2 + 0] == u.entry(1, 0));
}

TEST_CASE("space factor: identities, solves, quadratic forms") {
  const QuadMesh mesh(4);
  const auto mass = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  const auto stiff = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  const auto solver = std::make_shared<SpdFactorization>(*stiff);
  const index_t n = mesh.interior_nodes();
  const auto v = random_vec(3, n, 0);

  SpaceFactor::Workspace ws;

  // All-null factor acts as the identity.
  const SpaceFactor ident{nullptr, nullptr, nullptr, n};
  CHECK(testing::materialize(ident).max_abs_diff(Dense::identity(n)) == 0.0);

  // mass^T stiffness^{-1} mass against dense arithmetic.
  const SpaceFactor mdm{mass, solver, mass, n};
  const Dense dm = testing::from_sparse(*mass);
  const Dense dk = testing::from_sparse(*stiff);
  const auto y = mdm.apply(v);
  const auto ref = dm.transposed().apply(
      testing::solve_spd(dk, dm.apply(v)));
  CHECK(testing::rel_l2_error(y, ref) <= 1e-12);

  const double q = mdm.quad_form(v, ws);
  double dot = 0.0;
  for (index_t i = 0; i < n; ++i) {
    dot += v[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  }
  CHECK(q == doctest::Approx(dot).epsilon(1e-12));
  CHECK(mdm.has_middle());

  // One-sided factors: left^T only and right only.
  const SpaceFactor right_only{nullptr, nullptr, mass, n};
  CHECK(testing::materialize(right_only).max_abs_diff(dm) <= 1e-15);
  const SpaceFactor left_only{mass, nullptr, nullptr, n};
  CHECK(testing::materialize(left_only).max_abs_diff(dm.transposed()) <= 1e-15);

  // Diagonal extraction requires no middle solve.
  const SpaceFactor mm{mass, nullptr, mass, n};
  const auto diag = mm.diagonal();
  const Dense dmm = dm.transposed() * dm;
  for (index_t i = 0; i < n; ++i) {
    CHECK(diag[static_cast<std::size_t>(i)] == doctest::Approx(dmm(i, i)).epsilon(1e-14));
  }
  const auto diag_identity = ident.diagonal();
  for (double d : diag_identity) CHECK(d == 1.0);
  const auto diag_right = right_only.diagonal();
  for (index_t i = 0; i < n; ++i) {
    CHECK(diag_right[static_cast<std::size_t>(i)] == mass->coeff(i, i));
  }
}

TEST_CASE("kronecker-sum operator applies term by term") {
  const QuadMesh mesh(4);
  const TimeGrid grid(3);
  const auto mass = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  const auto stiff = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  const TimeMatrices tm = assemble_p1_matrices(grid);
  const index_t ns = mesh.interior_nodes();
  const index_t nt = grid.nodes();

  std::vector<KronTerm> terms;
  terms.push_back({SpaceFactor{nullptr, nullptr, mass, ns}, tm.stiffness, 1.0,
                   false, false, -1});
  terms.push_back({SpaceFactor{nullptr, nullptr, stiff, ns}, tm.mass, -0.5,
                   false, false, -1});
  const KroneckerSumOperator op(ns, nt, terms);

  const SeparatedVector x = random_separated(ns, nt, 2, 9);
  const SeparatedVector y = op.apply(x);
  CHECK(y.rank() == 4);  // term-major: 2 terms x 2 input columns

  const Dense b = testing::kron(testing::from_sparse(*mass),
                                testing::from_tridiag(tm.stiffness)) +
                  [&] {
                    Dense t = testing::kron(testing::from_sparse(*stiff),
                                            testing::from_tridiag(tm.mass));
                    t.scale(-0.5);
                    return t;
                  }();
  const auto ref = b.apply(testing::materialize(x));
  CHECK(testing::rel_l2_error(testing::materialize(y), ref) <= 1e-13);
}

TEST_CASE("gram norms equal materialized norms") {
  const QuadMesh mesh(4);
  const TimeGrid grid(4);
  const auto mass = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  const TimeMatrices tm = assemble_p1_matrices(grid);
  const index_t ns = mesh.interior_nodes();
  const index_t nt = grid.nodes();
  const SeparatedVector x = random_separated(ns, nt, 3, 21);
  const auto flat = testing::materialize(x);

  // Euclidean: identity weights.
  double ref = 0.0;
  for (double v : flat) ref += v * v;
  CHECK(gram_norm_sq(x) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(gram_norm_sq(x, SpaceWeight::identity(), TimeWeight::identity()) ==
        doctest::Approx(ref).epsilon(1e-12));

  // Weighted by mass (x) time-mass.
  const Dense w = testing::kron(testing::from_sparse(*mass),
                                testing::from_tridiag(tm.mass));
  const auto wf = w.apply(flat);
  double wref = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) wref += flat[i] * wf[i];
  CHECK(gram_norm_sq(x, SpaceWeight::matrix(mass.get()),
                     TimeWeight::matrix(&tm.mass)) ==
        doctest::Approx(wref).epsilon(1e-12));

  // Factor-weighted space side.
  const auto stiff = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  const auto solver = std::make_shared<SpdFactorization>(*stiff);
  const SpaceFactor mdm{mass, solver, mass, ns};
  const Dense wd = testing::kron(testing::materialize(mdm),
                                 testing::from_tridiag(tm.mass));
  const auto wdf = wd.apply(flat);
  double wdref = 0.0;
  for (std::size_t i = 0; i < flat.size(); ++i) wdref += flat[i] * wdf[i];
  CHECK(gram_norm_sq(x, SpaceWeight::factor(&mdm), TimeWeight::matrix(&tm.mass)) ==
        doctest::Approx(wdref).epsilon(1e-12));

  // Cancellation: u - u has zero norm up to round-off.
  SeparatedVector z = x;
  z.append_all_scaled(-1.0, x);
  const double zn = gram_norm_sq(z);
  CHECK(std::abs(zn) <= 1e-13 * ref);
}

TEST_CASE("clamped sqrt") {
  CHECK(clamped_sqrt(4.0, 1.0) == 2.0);
  CHECK(clamped_sqrt(0.0, 1.0) == 0.0);
  CHECK(clamped_sqrt(-1e-15, 1.0) == 0.0);
  CHECK_THROWS_AS((void)clamped_sqrt(-1e-3, 1.0), std::runtime_error);
}
