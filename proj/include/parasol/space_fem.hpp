#pragma once

// Bilinear (Q1) finite elements on a uniform square mesh of the unit square
// with homogeneous Dirichlet conditions: only interior nodes carry unknowns.
// Nodes are numbered lexicographically (x fastest), which keeps every
// assembled matrix narrow-band.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "parasol/sparse.hpp"

namespace parasol {

using ScalarField = std::function<double(double, double)>;
using VelocityField = std::function<std::array<double, 2>(double, double)>;

struct QuadMesh {
  explicit QuadMesh(index_t cells_per_side);

  index_t cells_per_side = 0;

  double h() const { return 1.0 / static_cast<double>(cells_per_side); }
  index_t nodes_per_side() const { return cells_per_side - 1; }
  index_t interior_nodes() const { return nodes_per_side() * nodes_per_side(); }

  /// Interior grid coordinates (i, j), 1 <= i, j <= n-1, to unknown index.
  index_t index(index_t i, index_t j) const {
    return (j - 1) * nodes_per_side() + (i - 1);
  }
  bool is_interior(index_t i, index_t j) const {
    return i >= 1 && i <= nodes_per_side() && j >= 1 && j <= nodes_per_side();
  }
};

/// Mass matrix (M)_ij = integral of psi_j psi_i.
SparseMatrix assemble_mass(const QuadMesh& mesh);

/// Stiffness matrix (D)_ij = integral of grad psi_j . grad psi_i.
SparseMatrix assemble_stiffness(const QuadMesh& mesh);

/// Advection matrix (C)_ij = integral of (c . grad psi_j) psi_i, with the
/// velocity evaluated by the 5x5 Gauss rule per cell (exact for polynomial
/// velocities up to high degree).
SparseMatrix assemble_advection(const QuadMesh& mesh, const VelocityField& c);

/// Load moments (f)_i = integral of f psi_i via the 5x5 Gauss rule per cell.
std::vector<double> assemble_load(const QuadMesh& mesh, const ScalarField& f);

/// Moment vector of the initial datum, (b)_i = integral of u0 psi_i. This is
/// the vector that enters the right-hand side assembly directly.
std::vector<double> project_initial(const QuadMesh& mesh, const ScalarField& u0);

/// Nodal coefficients of the L2 projection: solves M x = moments.
std::vector<double> nodal_from_moments(const QuadMesh& mesh,
                                       std::span<const double> moments);

/// Values of a function at the interior nodes (the Q1 nodal interpolant).
std::vector<double> nodal_interpolant(const QuadMesh& mesh, const ScalarField& f);

/// Exact Q1 interpolation from mesh (n cells) to the dyadically refined mesh
/// (2n cells): even fine nodes copy, odd fine nodes average neighbours, with
/// homogeneous boundary values outside the interior index range.
std::vector<double> prolong_space(const QuadMesh& coarse, std::span<const double> v);

}  // namespace parasol
