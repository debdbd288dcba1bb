#include "parasol/time_fem.hpp"

#include <stdexcept>

#include "parasol/quadrature.hpp"

namespace parasol {

namespace {

// Accumulates the 2x2 element contribution loc (local nodes: left, right of
// element e) into a tridiagonal matrix.
void scatter_element(TriDiagMatrix& t, index_t e, const double loc[2][2]) {
  t.diag[e] += loc[0][0];
  t.diag[e + 1] += loc[1][1];
  t.upper[e] += loc[0][1];
  t.lower[e] += loc[1][0];
}

}  // namespace

TimeGrid::TimeGrid(index_t elements_, double horizon_)
    : elements(elements_), horizon(horizon_) {
  if (elements < 1 || !(horizon > 0.0)) {
    throw std::invalid_argument("time grid needs >= 1 element and T > 0");
  }
}

TimeMatrices assemble_p1_matrices(const TimeGrid& grid) {
  const index_t n = grid.nodes();
  const double tau = grid.tau();
  TimeMatrices m{TriDiagMatrix::zero(n), TriDiagMatrix::zero(n),
                 TriDiagMatrix::zero(n), TriDiagMatrix::zero(n)};
  for (index_t e = 0; e < grid.elements; ++e) {
    const double stiff[2][2] = {{1.0 / tau, -1.0 / tau}, {-1.0 / tau, 1.0 / tau}};
    const double mass[2][2] = {{tau / 3.0, tau / 6.0}, {tau / 6.0, tau / 3.0}};
    // (E)_ab = integral phi_b' phi_a over the element.
    const double deriv[2][2] = {{-0.5, 0.5}, {-0.5, 0.5}};
    scatter_element(m.stiffness, e, stiff);
    scatter_element(m.mass, e, mass);
    scatter_element(m.derivative, e, deriv);
  }
  m.initial_outer.diag[0] = 1.0;
  return m;
}

TriDiagMatrix terminal_outer(const TimeGrid& grid) {
  TriDiagMatrix t = TriDiagMatrix::zero(grid.nodes());
  t.diag[grid.elements] = 1.0;
  return t;
}

TriDiagMatrix assemble_weighted_mass(const TimeGrid& grid, const TimeFn& mu_p,
                                     const TimeFn& mu_q) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  TriDiagMatrix t = TriDiagMatrix::zero(grid.nodes());
  for (index_t e = 0; e < grid.elements; ++e) {
    const double t0 = grid.node(e);
    double loc[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int g = 0; g < 5; ++g) {
      const double xi = q.node[g];
      const double tg = t0 + tau * xi;
      const double w = q.weight[g] * mu_p(tg) * mu_q(tg);
      const double phi[2] = {1.0 - xi, xi};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) loc[a][b] += tau * w * phi[a] * phi[b];
      }
    }
    scatter_element(t, e, loc);
  }
  return t;
}

TriDiagMatrix assemble_weighted_derivative(const TimeGrid& grid, const TimeFn& mu) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  TriDiagMatrix t = TriDiagMatrix::zero(grid.nodes());
  for (index_t e = 0; e < grid.elements; ++e) {
    const double t0 = grid.node(e);
    double loc[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int g = 0; g < 5; ++g) {
      const double xi = q.node[g];
      const double w = q.weight[g] * mu(t0 + tau * xi);
      const double phi[2] = {1.0 - xi, xi};
      const double dphi[2] = {-1.0, 1.0};  // tau * phi', cancels the 1/tau
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) loc[a][b] += w * dphi[b] * phi[a];
      }
    }
    scatter_element(t, e, loc);
  }
  return t;
}

std::vector<double> assemble_derivative_moments(const TimeGrid& grid,
                                                const TimeFn& lambda) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  std::vector<double> v(static_cast<std::size_t>(grid.nodes()), 0.0);
  for (index_t e = 0; e < grid.elements; ++e) {
    const double t0 = grid.node(e);
    double acc = 0.0;
    for (int g = 0; g < 5; ++g) {
      acc += q.weight[g] * lambda(t0 + tau * q.node[g]);
    }
    v[e] -= acc;
    v[e + 1] += acc;
  }
  return v;
}

std::vector<double> assemble_weighted_moments(const TimeGrid& grid, const TimeFn& mu,
                                              const TimeFn& lambda) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  std::vector<double> v(static_cast<std::size_t>(grid.nodes()), 0.0);
  for (index_t e = 0; e < grid.elements; ++e) {
    const double t0 = grid.node(e);
    double loc[2] = {0.0, 0.0};
    for (int g = 0; g < 5; ++g) {
      const double xi = q.node[g];
      const double tg = t0 + tau * xi;
      const double w = q.weight[g] * mu(tg) * lambda(tg);
      loc[0] += tau * w * (1.0 - xi);
      loc[1] += tau * w * xi;
    }
    v[e] += loc[0];
    v[e + 1] += loc[1];
  }
  return v;
}

std::vector<double> initial_unit(const TimeGrid& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.nodes()), 0.0);
  v[0] = 1.0;
  return v;
}

std::vector<double> pg_test_mass(const TimeGrid& grid, bool refined) {
  const index_t rows = refined ? 2 * grid.elements : grid.elements;
  const double len = refined ? 0.5 * grid.tau() : grid.tau();
  return std::vector<double>(static_cast<std::size_t>(rows), len);
}

PgBlock assemble_pg_derivative(const TimeGrid& grid, bool refined) {
  PgBlock b;
  b.cols = grid.nodes();
  if (!refined) {
    b.rows = grid.elements;
    b.row.resize(static_cast<std::size_t>(b.rows));
    for (index_t e = 0; e < grid.elements; ++e) {
      b.row[e] = {e, -1.0, 1.0};
    }
  } else {
    b.rows = 2 * grid.elements;
    b.row.resize(static_cast<std::size_t>(b.rows));
    for (index_t r = 0; r < b.rows; ++r) {
      b.row[r] = {r / 2, -0.5, 0.5};
    }
  }
  return b;
}

PgBlock assemble_pg_weighted_mass(const TimeGrid& grid, const TimeFn& mu,
                                  bool refined) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  PgBlock b;
  b.cols = grid.nodes();
  b.rows = refined ? 2 * grid.elements : grid.elements;
  b.row.resize(static_cast<std::size_t>(b.rows));
  const double len = refined ? 0.5 * tau : tau;
  for (index_t r = 0; r < b.rows; ++r) {
    const index_t e = refined ? r / 2 : r;
    const double start = refined ? grid.node(e) + 0.5 * tau * (r % 2) : grid.node(e);
    double loc[2] = {0.0, 0.0};
    for (int g = 0; g < 5; ++g) {
      const double tg = start + len * q.node[g];
      const double w = q.weight[g] * mu(tg);
      const double xi = (tg - grid.node(e)) / tau;  // trial-element coordinate
      loc[0] += len * w * (1.0 - xi);
      loc[1] += len * w * xi;
    }
    b.row[r] = {e, loc[0], loc[1]};
  }
  return b;
}

std::vector<double> assemble_pg_source_moments(const TimeGrid& grid,
                                               const TimeFn& lambda, bool refined) {
  const GaussRule5& q = gauss5();
  const double tau = grid.tau();
  const index_t rows = refined ? 2 * grid.elements : grid.elements;
  const double len = refined ? 0.5 * tau : tau;
  std::vector<double> v(static_cast<std::size_t>(rows), 0.0);
  for (index_t r = 0; r < rows; ++r) {
    const double start =
        refined ? grid.node(r / 2) + 0.5 * tau * (r % 2) : grid.node(r);
    double acc = 0.0;
    for (int g = 0; g < 5; ++g) {
      acc += q.weight[g] * lambda(start + len * q.node[g]);
    }
    v[r] = len * acc;
  }
  return v;
}

std::vector<double> assemble_pg_derivative_moments(const TimeGrid& grid,
                                                   const TimeFn& /*lambda*/,
                                                   bool refined) {
  const index_t rows = refined ? 2 * grid.elements : grid.elements;
  return std::vector<double>(static_cast<std::size_t>(rows), 0.0);
}

TriDiagMatrix pg_normal_product(const PgBlock& P, std::span<const double> test_mass,
                                const PgBlock& Q) {
  if (P.rows != Q.rows || P.cols != Q.cols ||
      static_cast<index_t>(test_mass.size()) != P.rows) {
    throw std::invalid_argument("pg_normal_product: block shape mismatch");
  }
  TriDiagMatrix t = TriDiagMatrix::zero(P.cols);
  for (index_t r = 0; r < P.rows; ++r) {
    if (P.row[r].col0 != Q.row[r].col0) {
      throw std::invalid_argument("pg_normal_product: misaligned rows");
    }
    const double inv = 1.0 / test_mass[r];
    const index_t c = P.row[r].col0;
    t.diag[c] += P.row[r].v0 * inv * Q.row[r].v0;
    t.upper[c] += P.row[r].v0 * inv * Q.row[r].v1;
    t.lower[c] += P.row[r].v1 * inv * Q.row[r].v0;
    t.diag[c + 1] += P.row[r].v1 * inv * Q.row[r].v1;
  }
  return t;
}

std::vector<double> pg_normal_vector(const PgBlock& P,
                                     std::span<const double> test_mass,
                                     std::span<const double> d) {
  if (static_cast<index_t>(test_mass.size()) != P.rows ||
      static_cast<index_t>(d.size()) != P.rows) {
    throw std::invalid_argument("pg_normal_vector: size mismatch");
  }
  std::vector<double> v(static_cast<std::size_t>(P.cols), 0.0);
  for (index_t r = 0; r < P.rows; ++r) {
    const double s = d[r] / test_mass[r];
    v[P.row[r].col0] += P.row[r].v0 * s;
    v[P.row[r].col0 + 1] += P.row[r].v1 * s;
  }
  return v;
}

std::vector<double> prolong_time(const TimeGrid& coarse, std::span<const double> s) {
  if (static_cast<index_t>(s.size()) != coarse.nodes()) {
    throw std::invalid_argument("prolong_time: size mismatch");
  }
  std::vector<double> out(static_cast<std::size_t>(2 * coarse.elements) + 1);
  for (index_t l = 0; l < coarse.nodes(); ++l) {
    out[2 * l] = s[l];
    if (l + 1 < coarse.nodes()) out[2 * l + 1] = 0.5 * (s[l] + s[l + 1]);
  }
  return out;
}

}  // namespace parasol
