#pragma once

// Normal-equation systems for the space-time least-squares formulation:
// B u = g with B a symmetric positive definite Kronecker sum. The three
// method variants differ in the metric placed on the test space:
//   1 riesz           -- dual norms realized through stiffness solves,
//                        semi-discrete in time
//   2 petrov_galerkin -- fully discrete piecewise-constant test space in time
//                        (same stiffness-solve realization in space)
//   3 euclidean       -- plain Euclidean metric (stiffness solves dropped)
// Also provides the rank-one reductions used by the alternating solver and a
// Gram-based residual tracker that never materializes full tensors.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "parasol/pcg.hpp"
#include "parasol/problems.hpp"
#include "parasol/separated.hpp"

namespace parasol {

enum class Method { riesz = 1, petrov_galerkin = 2, euclidean = 3 };

Method method_from_int(int m);

/// Matrices realizing the discrete solution-space norm
///   ||u||_X^2 = ||u||_{L2(H1)}^2 + (1/M^2) ||du/dt||_{L2(dual)}^2
///             + (1/alpha) ||u(T)||_{L2}^2,
/// where the dual pairing uses stiffness solves (or the identity for the
/// euclidean method, whose induced norm drops the middle solve).
struct NormOperators {
  std::shared_ptr<const SparseMatrix> space_mass;
  std::shared_ptr<const SparseMatrix> space_stiffness;
  std::shared_ptr<const SpdFactorization> stiffness_solver;  // null => identity
  TriDiagMatrix time_mass;
  TriDiagMatrix time_stiffness;
  TriDiagMatrix terminal;  // phi_l(T) phi_m(T)
  SpaceFactor dual_weight;  // mass * middle * mass
  double alpha = 1.0;
  double bound_m = 1.0;
};

struct MinResSystem {
  Method method = Method::riesz;
  index_t n_space = 0;
  index_t n_time = 0;
  KroneckerSumOperator op;            // B
  SeparatedVector rhs;                // g
  std::vector<bool> rhs_initial;      // per g column: initial-condition part?
  /// Per-term diagonals of the space factors (euclidean method only).
  std::vector<std::vector<double>> term_diagonals;
  std::shared_ptr<const SpdFactorization> stiffness_solver;  // null for euclidean
  NormOperators norms;
};

/// Assembles the normal-equation system for the given method. The number of
/// right-hand-side columns is Q + P*Q + 1.
MinResSystem assemble_system(const Problem& p, const SpaceDiscretization& sd,
                             const TimeDiscretization& td, Method method,
                             bool pg_refined = false);

/// ||x||_X^2 through the factor Gram matrices.
double xnorm_sq(const SeparatedVector& x, const NormOperators& norms);

/// Space subproblem at fixed time factor s: operator sum_r c_r S_r, with the
/// right-hand side already contracted against the current residual.
struct ReducedSpaceProblem {
  std::vector<double> coeff;   // c_r = w_r * s^T T_r s
  std::vector<double> rhs;
  double gamma = 0.0;          // stiffness-preconditioner scale
  std::vector<double> jacobi;  // diagonal preconditioner (euclidean method)
};

/// Time subproblem at fixed space factor v: symmetric tridiagonal matrix
/// sum_r (w_r v^T S_r v) T_r and contracted right-hand side.
struct ReducedTimeProblem {
  TriDiagMatrix matrix;
  std::vector<double> rhs;
};

/// Matrix-free application v -> sum_r coeff[r] * S_r v.
LinearMap make_space_map(const MinResSystem& sys, std::vector<double> coeff);

/// Preconditioner for the reduced space problem: (1/gamma) stiffness solve
/// for the riesz/petrov_galerkin methods, Jacobi for euclidean.
LinearMap make_space_preconditioner(const MinResSystem& sys,
                                    const ReducedSpaceProblem& red);

/// Incremental Gram bookkeeping for the residual B u - g of a growing
/// rank-one expansion. Stores the applied factor columns (w_r S_r v_n,
/// T_r s_n) and the negated right-hand-side columns; all residual norms,
/// splits and objective values are sums over the maintained Gram tables.
class ResidualTracker {
 public:
  explicit ResidualTracker(const MinResSystem& sys);

  /// Appends an accepted rank-one factor, applying every operator term.
  void append(std::span<const double> v, std::span<const double> s);

  index_t solution_rank() const { return m_; }
  double g_norm() const { return gnorm_; }
  double abs_residual() const;
  /// ||B u - g|| / ||g||; falls back to the absolute residual when g = 0.
  double rel_residual() const;
  double rel_residual_pde() const;
  double rel_residual_ic() const;
  /// 1/2 u^T B u - u^T g.
  double objective() const;

  /// Objective value if (v, s) were appended, without appending.
  double candidate_objective(std::span<const double> v,
                             std::span<const double> s) const;

  /// Contraction rhs = -sum_c dot(time_c, s) space_c over all stored columns
  /// (g columns enter negated): the right-hand side of the space reduction.
  std::vector<double> contract_space(std::span<const double> s) const;
  /// rhs = -sum_c dot(space_c, v) time_c: right-hand side of the time
  /// reduction.
  std::vector<double> contract_time(std::span<const double> v) const;

  const MinResSystem& system() const { return *sys_; }

 private:
  std::span<const double> space_col(index_t c) const;
  std::span<const double> time_col(index_t c) const;
  void push_column(std::span<const double> a, std::span<const double> b, bool ic,
                   bool is_rhs);

  const MinResSystem* sys_;
  index_t m_ = 0;          // accepted rank
  index_t cols_ = 0;       // stored columns: J_g + m * R
  std::vector<double> space_store_;  // column-major
  std::vector<double> time_store_;
  std::vector<bool> ic_;
  std::vector<bool> is_rhs_;
  std::vector<std::vector<double>> gram_;  // lower-triangular rows
  // Cross sums X_c = sum_n dot(a_c, v_n) dot(b_c, s_n) against the solution.
  std::vector<double> cross_;
  SeparatedVector u_;
  double gnorm_ = 0.0;
  mutable SpaceFactor::Workspace ws_;
};

/// Reference implementations of the rank-one reductions (recompute all term
/// applications from u_prev; the solver uses the tracker-backed fast path,
/// and tests cross-check the two).
ReducedSpaceProblem reduce_to_space(const MinResSystem& sys,
                                    const SeparatedVector& u_prev,
                                    std::span<const double> s);
ReducedTimeProblem reduce_to_time(const MinResSystem& sys,
                                  const SeparatedVector& u_prev,
                                  std::span<const double> v);

/// Tracker-backed fast paths (same math, cached applications).
ReducedSpaceProblem reduce_to_space(const ResidualTracker& tracker,
                                    std::span<const double> s);
ReducedTimeProblem reduce_to_time(const ResidualTracker& tracker,
                                  std::span<const double> v);

/// Relative Euclidean residual split (pde, ic, total) of an arbitrary
/// separated iterate in this system, evaluated by a throwaway tracker.
struct ResidualSplit {
  double total = 0.0;
  double pde = 0.0;
  double ic = 0.0;
};
ResidualSplit residual_l2(const MinResSystem& sys, const SeparatedVector& u);

}  // namespace parasol
