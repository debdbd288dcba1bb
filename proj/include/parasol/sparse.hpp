#pragma once

// Sparse matrix storage and the direct solvers used by the solver core:
// CSR matrices for the finite element operators, a banded Cholesky
// factorization for symmetric positive definite matrices (the uniform-mesh
// lexicographic numbering keeps bandwidths small), and an LDL^T solver for
// symmetric tridiagonal systems.

#include <cstdint>
#include <span>
#include <vector>

namespace parasol {

using index_t = std::int32_t;

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row matrix with sorted column indices per row.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Builds from coordinate triplets; duplicate entries are summed.
  static SparseMatrix from_triplets(index_t rows, index_t cols,
                                    std::vector<Triplet> triplets);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }

  /// y = A x.
  void apply(std::span<const double> x, std::span<double> y) const;
  /// y += a * (A x).
  void apply_add(double a, std::span<const double> x, std::span<double> y) const;
  /// y = A^T x.
  void apply_transposed(std::span<const double> x, std::span<double> y) const;

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transposed(std::span<const double> x) const;

  /// Entry lookup (zero when the position is not stored). For tests and
  /// small-matrix manipulation, not for hot loops.
  double coeff(index_t i, index_t j) const;

  /// Largest |a_ij - a_ji|; zero for exactly symmetric storage.
  double max_asymmetry() const;

  /// Largest |i - j| over stored entries.
  index_t bandwidth() const;

  std::vector<double> diagonal() const;

  std::span<const index_t> row_offsets() const { return row_offsets_; }
  std::span<const index_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  /// this + a * other, patterns merged (dimensions must match).
  SparseMatrix plus_scaled(double a, const SparseMatrix& other) const;

  /// Exact structural and numerical equality.
  bool equals(const SparseMatrix& other) const;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<index_t> row_offsets_;
  std::vector<index_t> col_indices_;
  std::vector<double> values_;
};

/// Tridiagonal matrix (not necessarily symmetric): lower/upper hold the
/// sub/super diagonal.
struct TriDiagMatrix {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  static TriDiagMatrix zero(index_t n);

  index_t dim() const { return static_cast<index_t>(diag.size()); }

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_transposed(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// this += a * other.
  void add_scaled(double a, const TriDiagMatrix& other);

  double max_asymmetry() const;

  /// Dense entry lookup for tests.
  double coeff(index_t i, index_t j) const;

  TriDiagMatrix transposed() const;
};

/// Solves T x = b for symmetric tridiagonal T by LDL^T without pivoting.
/// Throws std::runtime_error("singular tridiagonal system") on a zero pivot.
std::vector<double> solve_sym_tridiagonal(const TriDiagMatrix& T,
                                          std::span<const double> b);

/// Banded Cholesky factorization of a symmetric positive definite matrix.
/// Factorization cost O(n*bw^2), solves O(n*bw).
class SpdFactorization {
 public:
  /// Throws std::invalid_argument if K is not symmetric and
  /// std::runtime_error("matrix not SPD") if a pivot fails.
  explicit SpdFactorization(const SparseMatrix& K);

  index_t dim() const { return n_; }
  index_t bandwidth() const { return bw_; }

  void solve(std::span<const double> b, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> b) const;

  /// Number of solve() calls performed through this factorization object.
  /// Used by cost-accounting diagnostics and tests.
  std::int64_t solve_count() const { return solve_count_; }

 private:
  index_t n_ = 0;
  index_t bw_ = 0;
  // Lower band, row-major: band_[i*(bw_+1) + (bw_ - (i - j))] holds L(i,j).
  std::vector<double> band_;
  mutable std::int64_t solve_count_ = 0;
};

}  // namespace parasol
