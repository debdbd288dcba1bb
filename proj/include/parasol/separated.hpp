#pragma once

// Low-rank separated representation of space-time vectors and the
// Kronecker-sum operators acting on them. A separated vector stores factor
// columns (a_j, b_j) representing sum_j a_j (x) b_j; the full tensor of size
// n_space*n_time is never materialized outside of small-instance tests.

#include <memory>
#include <span>
#include <vector>

#include "parasol/sparse.hpp"

namespace parasol {

class SeparatedVector {
 public:
  SeparatedVector() = default;
  SeparatedVector(index_t n_space, index_t n_time)
      : n_space_(n_space), n_time_(n_time) {}

  index_t n_space() const { return n_space_; }
  index_t n_time() const { return n_time_; }
  index_t rank() const { return rank_; }

  std::span<const double> space_col(index_t j) const {
    return {space_.data() + static_cast<std::size_t>(j) * n_space_,
            static_cast<std::size_t>(n_space_)};
  }
  std::span<const double> time_col(index_t j) const {
    return {time_.data() + static_cast<std::size_t>(j) * n_time_,
            static_cast<std::size_t>(n_time_)};
  }
  std::span<double> space_col(index_t j) {
    return {space_.data() + static_cast<std::size_t>(j) * n_space_,
            static_cast<std::size_t>(n_space_)};
  }
  std::span<double> time_col(index_t j) {
    return {time_.data() + static_cast<std::size_t>(j) * n_time_,
            static_cast<std::size_t>(n_time_)};
  }

  void append(std::span<const double> a, std::span<const double> b);
  /// Appends (c*a, b): scalar weights are absorbed into the space factor.
  void append_scaled(double c, std::span<const double> a, std::span<const double> b);
  /// Appends all columns of other scaled by c.
  void append_all_scaled(double c, const SeparatedVector& other);

  /// Evaluates entry (i, l) of the represented tensor. Test/debug helper.
  double entry(index_t i, index_t l) const;

 private:
  index_t n_space_ = 0;
  index_t n_time_ = 0;
  index_t rank_ = 0;
  std::vector<double> space_;  // column-major n_space x rank
  std::vector<double> time_;   // column-major n_time x rank
};

/// Symmetric space operator of the form left^T * middle^{-1} * right where any
/// component may be the identity (null pointer). `middle` is a factorized SPD
/// matrix applied via solves.
struct SpaceFactor {
  std::shared_ptr<const SparseMatrix> left;
  std::shared_ptr<const SpdFactorization> middle;
  std::shared_ptr<const SparseMatrix> right;
  index_t dim = 0;

  struct Workspace {
    std::vector<double> t0;
    std::vector<double> t1;
  };

  /// out = left^T middle^{-1} right v.
  void apply(std::span<const double> v, std::span<double> out, Workspace& ws) const;
  std::vector<double> apply(std::span<const double> v) const;

  /// v^T (left^T middle^{-1} right) v = (left v)^T middle^{-1} (right v).
  double quad_form(std::span<const double> v, Workspace& ws) const;

  bool has_middle() const { return middle != nullptr; }

  /// Diagonal of left^T * right; requires middle == identity.
  std::vector<double> diagonal() const;
};

/// One term w * S (x) T of a Kronecker sum. `initial_block` marks the term
/// that enforces the initial condition (used for residual splitting).
/// `gamma_block` marks the second-order diagonal terms whose time quadratic
/// forms set the stiffness-preconditioner scale. `pair_of` is the index of an
/// earlier term that is this term's transpose partner: both have identical
/// quadratic forms, and reusing the earlier value keeps reduced matrices
/// exactly symmetric.
struct KronTerm {
  SpaceFactor space;
  TriDiagMatrix time;
  double weight = 1.0;
  bool initial_block = false;
  bool gamma_block = false;
  int pair_of = -1;
};

class KroneckerSumOperator {
 public:
  KroneckerSumOperator() = default;
  KroneckerSumOperator(index_t n_space, index_t n_time, std::vector<KronTerm> terms)
      : n_space_(n_space), n_time_(n_time), terms_(std::move(terms)) {}

  index_t n_space() const { return n_space_; }
  index_t n_time() const { return n_time_; }
  const std::vector<KronTerm>& terms() const { return terms_; }

  /// y = B x in separated form; the result has rank terms * rank(x), column
  /// order: term-major, then input column.
  SeparatedVector apply(const SeparatedVector& x) const;

 private:
  index_t n_space_ = 0;
  index_t n_time_ = 0;
  std::vector<KronTerm> terms_;
};

/// Symmetric weight for the space side of a Gram norm.
class SpaceWeight {
 public:
  static SpaceWeight identity() { return SpaceWeight{}; }
  static SpaceWeight matrix(const SparseMatrix* m) {
    SpaceWeight w;
    w.matrix_ = m;
    return w;
  }
  static SpaceWeight factor(const SpaceFactor* f) {
    SpaceWeight w;
    w.factor_ = f;
    return w;
  }
  void apply(std::span<const double> v, std::span<double> out) const;

 private:
  const SparseMatrix* matrix_ = nullptr;
  const SpaceFactor* factor_ = nullptr;
};

class TimeWeight {
 public:
  static TimeWeight identity() { return TimeWeight{}; }
  static TimeWeight matrix(const TriDiagMatrix* m) {
    TimeWeight w;
    w.matrix_ = m;
    return w;
  }
  void apply(std::span<const double> v, std::span<double> out) const;

 private:
  const TriDiagMatrix* matrix_ = nullptr;
};

/// ||x||^2 in the inner product induced by Ws (x) Wt, evaluated through the
/// factor Gram matrices: cost O(J^2 (n_space + n_time)) plus J weight
/// applications. Can return a tiny negative value in exact-zero situations;
/// callers that need a norm clamp before taking the square root.
double gram_norm_sq(const SeparatedVector& x, const SpaceWeight& ws,
                    const TimeWeight& wt);

/// Euclidean version (identity weights).
double gram_norm_sq(const SeparatedVector& x);

/// sqrt with the relative clamp for tiny negative Gram round-off: values in
/// [-1e-14 * scale, 0) are treated as zero; more negative values throw.
double clamped_sqrt(double value, double scale);

}  // namespace parasol
