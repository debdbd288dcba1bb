#pragma once

// Error measurement against a reference discretization: iterates are
// prolonged to the reference grids (exact interpolation on nested dyadic
// meshes), subtracted from the reference solution in separated form, and
// measured in the L2(time; H1) and H1(time; dual) Gram norms. Also provides
// the least-squares convergence-order fit.

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "parasol/problems.hpp"
#include "parasol/separated.hpp"

namespace parasol {

/// Reference grids, norm matrices and reference solution for one benchmark.
/// Levels are dyadic exponents: the mesh has 2^space_level cells per side and
/// the time grid 2^time_level elements.
struct ReferenceFrame {
  index_t space_level = 0;
  index_t time_level = 0;
  std::shared_ptr<const SparseMatrix> mass;
  std::shared_ptr<const SparseMatrix> stiffness;
  std::shared_ptr<const SpdFactorization> stiffness_solver;
  TriDiagMatrix time_mass;
  TriDiagMatrix time_stiffness;
  SpaceFactor dual_weight;  // M D^-1 M on the reference mesh
  SeparatedVector reference;
  double ref_l2h1 = 0.0;   // reference-solution norms, cached for normalization
  double ref_h1hm1 = 0.0;
};

/// Frame whose reference is the nodal interpolant of the problem's separated
/// closed-form solution; requires one.
ReferenceFrame make_exact_frame(const Problem& p, index_t space_level,
                                index_t time_level);

/// Frame whose reference is a solution computed on the frame's own grids.
ReferenceFrame make_computed_frame(index_t space_level, index_t time_level,
                                   const SeparatedVector& u);

/// Exact interpolation of a separated iterate living on the (space_level,
/// time_level) grids onto the frame grids. Throws when levels are not nested
/// below the frame.
SeparatedVector lift_to_frame(const SeparatedVector& u, index_t space_level,
                              index_t time_level, const ReferenceFrame& frame);

/// Relative L2(time; H1-seminorm) error against the frame reference.
double error_l2h1(const SeparatedVector& u, index_t space_level,
                  index_t time_level, const ReferenceFrame& frame);

/// Relative H1(time; discrete dual norm) error: weights M D^-1 M in space and
/// the time second-difference (stiffness) matrix.
double error_h1hm1(const SeparatedVector& u, index_t space_level,
                   index_t time_level, const ReferenceFrame& frame);

/// Least-squares slope of log(error) against log(parameter). Requires at
/// least 3 points, positive values, non-degenerate abscissae.
double fit_convergence_slope(std::span<const std::pair<double, double>> points);

}  // namespace parasol
