#pragma once

// Piecewise-affine (P1) finite elements on a uniform grid of [0, T] in the
// trial direction, plus the piecewise-constant test-space blocks used by the
// fully discrete Petrov-Galerkin formulation. Node 0 sits at t = 0; all
// matrices are tridiagonal in the nodal basis.

#include <functional>
#include <span>
#include <vector>

#include "parasol/sparse.hpp"

namespace parasol {

using TimeFn = std::function<double(double)>;

struct TimeGrid {
  explicit TimeGrid(index_t elements, double horizon = 1.0);

  index_t elements = 0;
  double horizon = 1.0;

  double tau() const { return horizon / static_cast<double>(elements); }
  index_t nodes() const { return elements + 1; }
  double node(index_t l) const { return tau() * static_cast<double>(l); }
};

struct TimeMatrices {
  TriDiagMatrix stiffness;      // (D)_lm = integral phi_m' phi_l'
  TriDiagMatrix mass;           // (M)_lm = integral phi_m phi_l
  TriDiagMatrix derivative;     // (E)_lm = integral phi_m' phi_l
  TriDiagMatrix initial_outer;  // phi_m(0) phi_l(0) = e_1 e_1^T
};

/// Closed-form unweighted P1 matrices. (E + E^T + initial_outer equals the
/// terminal rank-one matrix exactly -- integration by parts holds discretely.)
TimeMatrices assemble_p1_matrices(const TimeGrid& grid);

/// Terminal rank-one matrix phi_m(T) phi_l(T).
TriDiagMatrix terminal_outer(const TimeGrid& grid);

/// (M^(p,q))_lm = integral mu_p mu_q phi_m phi_l (5-point Gauss per element).
TriDiagMatrix assemble_weighted_mass(const TimeGrid& grid, const TimeFn& mu_p,
                                     const TimeFn& mu_q);

/// (E^(p))_lm = integral mu phi_m' phi_l.
TriDiagMatrix assemble_weighted_derivative(const TimeGrid& grid, const TimeFn& mu);

/// (e^(q))_l = integral lambda phi_l'.
std::vector<double> assemble_derivative_moments(const TimeGrid& grid,
                                                const TimeFn& lambda);

/// (d^(p,q))_l = integral mu lambda phi_l.
std::vector<double> assemble_weighted_moments(const TimeGrid& grid, const TimeFn& mu,
                                              const TimeFn& lambda);

/// (i)_l = phi_l(0): the first unit vector.
std::vector<double> initial_unit(const TimeGrid& grid);

/// Row of a piecewise-constant test block: two entries at columns
/// (col0, col0 + 1).
struct PgRowPair {
  index_t col0 = 0;
  double v0 = 0.0;
  double v1 = 0.0;
};

/// Rectangular block mapping nodal trial coefficients to test elements.
struct PgBlock {
  index_t rows = 0;
  index_t cols = 0;
  std::vector<PgRowPair> row;
};

/// Diagonal of the test mass matrix M^P (element lengths). `refined` halves
/// every trial element for the test grid.
std::vector<double> pg_test_mass(const TimeGrid& grid, bool refined);

/// (E^PG)_rm = integral over test element r of phi_m'.
PgBlock assemble_pg_derivative(const TimeGrid& grid, bool refined);

/// (M^PG)_rm = integral over test element r of mu phi_m.
PgBlock assemble_pg_weighted_mass(const TimeGrid& grid, const TimeFn& mu,
                                  bool refined);

/// (d^P)_r = integral over test element r of lambda.
std::vector<double> assemble_pg_source_moments(const TimeGrid& grid,
                                               const TimeFn& lambda, bool refined);

/// (e^P)_r = integral over test element r of lambda (phi^P_r)'. The test
/// functions are piecewise constant, so this vector is identically zero; it
/// is assembled literally to keep the degenerate pairing visible.
std::vector<double> assemble_pg_derivative_moments(const TimeGrid& grid,
                                                   const TimeFn& lambda,
                                                   bool refined);

/// P^T diag(m)^{-1} Q for two test blocks on the same test grid; the result
/// is tridiagonal in the trial basis.
TriDiagMatrix pg_normal_product(const PgBlock& P, std::span<const double> test_mass,
                                const PgBlock& Q);

/// P^T diag(m)^{-1} d.
std::vector<double> pg_normal_vector(const PgBlock& P,
                                     std::span<const double> test_mass,
                                     std::span<const double> d);

/// Exact P1 interpolation onto the dyadically refined grid (2N elements).
std::vector<double> prolong_time(const TimeGrid& coarse, std::span<const double> s);

}  // namespace parasol
