#include "parasol/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace parasol {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(index_t rows, index_t cols,
                                         std::vector<Triplet> triplets) {
  check(rows >= 0 && cols >= 0, "negative matrix dimension");
  for (const Triplet& t : triplets) {
    check(t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols,
          "triplet index out of range");
  }
  // Stable sort so duplicate entries accumulate in insertion order; symmetric
  // assembly then yields exactly symmetric storage (a_ij == a_ji bitwise).
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (index_t r = 0; r < rows; ++r) {
    m.row_offsets_[r] = static_cast<index_t>(m.values_.size());
    while (k < triplets.size() && triplets[k].row == r) {
      const index_t c = triplets[k].col;
      double v = 0.0;
      while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
        v += triplets[k].value;
        ++k;
      }
      m.col_indices_.push_back(c);
      m.values_.push_back(v);
    }
  }
  m.row_offsets_[rows] = static_cast<index_t>(m.values_.size());
  return m;
}

void SparseMatrix::apply(std::span<const double> x, std::span<double> y) const {
  check(static_cast<index_t>(x.size()) == cols_ &&
            static_cast<index_t>(y.size()) == rows_,
        "apply: dimension mismatch");
  for (index_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      acc += values_[k] * x[col_indices_[k]];
    }
    y[r] = acc;
  }
}

void SparseMatrix::apply_add(double a, std::span<const double> x,
                             std::span<double> y) const {
  check(static_cast<index_t>(x.size()) == cols_ &&
            static_cast<index_t>(y.size()) == rows_,
        "apply_add: dimension mismatch");
  for (index_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      acc += values_[k] * x[col_indices_[k]];
    }
    y[r] += a * acc;
  }
}

void SparseMatrix::apply_transposed(std::span<const double> x,
                                    std::span<double> y) const {
  check(static_cast<index_t>(x.size()) == rows_ &&
            static_cast<index_t>(y.size()) == cols_,
        "apply_transposed: dimension mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (index_t r = 0; r < rows_; ++r) {
    const double xr = x[r];
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      y[col_indices_[k]] += values_[k] * xr;
    }
  }
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(rows_));
  apply(x, y);
  return y;
}

std::vector<double> SparseMatrix::apply_transposed(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(cols_));
  apply_transposed(x, y);
  return y;
}

double SparseMatrix::coeff(index_t i, index_t j) const {
  check(i >= 0 && i < rows_ && j >= 0 && j < cols_, "coeff: index out of range");
  const index_t* begin = col_indices_.data() + row_offsets_[i];
  const index_t* end = col_indices_.data() + row_offsets_[i + 1];
  const index_t* it = std::lower_bound(begin, end, j);
  if (it != end && *it == j) return values_[it - col_indices_.data()];
  return 0.0;
}

double SparseMatrix::max_asymmetry() const {
  if (rows_ != cols_) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (index_t r = 0; r < rows_; ++r) {
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      worst = std::max(worst, std::abs(values_[k] - coeff(col_indices_[k], r)));
    }
  }
  return worst;
}

index_t SparseMatrix::bandwidth() const {
  index_t bw = 0;
  for (index_t r = 0; r < rows_; ++r) {
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      bw = std::max(bw, static_cast<index_t>(std::abs(r - col_indices_[k])));
    }
  }
  return bw;
}

std::vector<double> SparseMatrix::diagonal() const {
  const index_t n = std::min(rows_, cols_);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) d[i] = coeff(i, i);
  return d;
}

SparseMatrix SparseMatrix::plus_scaled(double a, const SparseMatrix& other) const {
  check(rows_ == other.rows_ && cols_ == other.cols_,
        "plus_scaled: dimension mismatch");
  std::vector<Triplet> trips;
  trips.reserve(values_.size() + other.values_.size());
  for (index_t r = 0; r < rows_; ++r) {
    for (index_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      trips.push_back({r, col_indices_[k], values_[k]});
    }
    for (index_t k = other.row_offsets_[r]; k < other.row_offsets_[r + 1]; ++k) {
      trips.push_back({r, other.col_indices_[k], a * other.values_[k]});
    }
  }
  return from_triplets(rows_, cols_, std::move(trips));
}

bool SparseMatrix::equals(const SparseMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         row_offsets_ == other.row_offsets_ && col_indices_ == other.col_indices_ &&
         values_ == other.values_;
}

TriDiagMatrix TriDiagMatrix::zero(index_t n) {
  TriDiagMatrix t;
  t.diag.assign(static_cast<std::size_t>(n), 0.0);
  const std::size_t off = n > 0 ? static_cast<std::size_t>(n) - 1 : 0;
  t.lower.assign(off, 0.0);
  t.upper.assign(off, 0.0);
  return t;
}

void TriDiagMatrix::apply(std::span<const double> x, std::span<double> y) const {
  const index_t n = dim();
  check(static_cast<index_t>(x.size()) == n && static_cast<index_t>(y.size()) == n,
        "tridiag apply: dimension mismatch");
  for (index_t i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += lower[i - 1] * x[i - 1];
    if (i + 1 < n) acc += upper[i] * x[i + 1];
    y[i] = acc;
  }
}

void TriDiagMatrix::apply_transposed(std::span<const double> x,
                                     std::span<double> y) const {
  const index_t n = dim();
  check(static_cast<index_t>(x.size()) == n && static_cast<index_t>(y.size()) == n,
        "tridiag apply_transposed: dimension mismatch");
  for (index_t i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += upper[i - 1] * x[i - 1];
    if (i + 1 < n) acc += lower[i] * x[i + 1];
    y[i] = acc;
  }
}

std::vector<double> TriDiagMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

void TriDiagMatrix::add_scaled(double a, const TriDiagMatrix& other) {
  check(dim() == other.dim(), "tridiag add_scaled: dimension mismatch");
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += a * other.diag[i];
  for (std::size_t i = 0; i < lower.size(); ++i) {
    lower[i] += a * other.lower[i];
    upper[i] += a * other.upper[i];
  }
}

double TriDiagMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    worst = std::max(worst, std::abs(lower[i] - upper[i]));
  }
  return worst;
}

TriDiagMatrix TriDiagMatrix::transposed() const {
  TriDiagMatrix t;
  t.diag = diag;
  t.lower = upper;
  t.upper = lower;
  return t;
}

double TriDiagMatrix::coeff(index_t i, index_t j) const {
  check(i >= 0 && i < dim() && j >= 0 && j < dim(), "tridiag coeff: out of range");
  if (i == j) return diag[i];
  if (i == j + 1) return lower[j];
  if (j == i + 1) return upper[i];
  return 0.0;
}

std::vector<double> solve_sym_tridiagonal(const TriDiagMatrix& T,
                                          std::span<const double> b) {
  const index_t n = T.dim();
  check(static_cast<index_t>(b.size()) == n, "tridiagonal solve: dimension mismatch");
  // LDL^T: d[i] pivot, l[i] multiplier for row i+1.
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<double> l(n > 0 ? static_cast<std::size_t>(n) - 1 : 0);
  std::vector<double> x(b.begin(), b.end());
  for (index_t i = 0; i < n; ++i) {
    double di = T.diag[i];
    if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
    if (di == 0.0 || !std::isfinite(di)) {
      throw std::runtime_error("singular tridiagonal system");
    }
    d[i] = di;
    if (i + 1 < n) l[i] = T.lower[i] / di;
  }
  // Forward substitution L z = b.
  for (index_t i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  // Diagonal.
  for (index_t i = 0; i < n; ++i) x[i] /= d[i];
  // Back substitution L^T x = z.
  for (index_t i = n - 2; i >= 0; --i) x[i] -= l[i] * x[i + 1];
  return x;
}

SpdFactorization::SpdFactorization(const SparseMatrix& K) {
  check(K.rows() == K.cols(), "factorization requires a square matrix");
  if (K.max_asymmetry() != 0.0) {
    throw std::invalid_argument("factorization requires a symmetric matrix");
  }
  n_ = K.rows();
  bw_ = K.bandwidth();
  const std::size_t stride = static_cast<std::size_t>(bw_) + 1;
  band_.assign(static_cast<std::size_t>(n_) * stride, 0.0);
  // Scatter the lower triangle into band storage: entry (i, j), j <= i, lives
  // at band_[i*stride + bw_ - (i - j)].
  const auto offsets = K.row_offsets();
  const auto cols = K.col_indices();
  const auto vals = K.values();
  for (index_t i = 0; i < n_; ++i) {
    for (index_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      const index_t j = cols[k];
      if (j <= i) band_[i * stride + bw_ - (i - j)] = vals[k];
    }
  }
  // In-place banded Cholesky K = L L^T.
  for (index_t j = 0; j < n_; ++j) {
    double piv = band_[j * stride + bw_];
    const index_t k0 = std::max<index_t>(0, j - bw_);
    for (index_t k = k0; k < j; ++k) {
      const double ljk = band_[j * stride + bw_ - (j - k)];
      piv -= ljk * ljk;
    }
    if (!(piv > 0.0) || !std::isfinite(piv)) {
      throw std::runtime_error("matrix not SPD");
    }
    const double ljj = std::sqrt(piv);
    band_[j * stride + bw_] = ljj;
    const index_t imax = std::min<index_t>(n_ - 1, j + bw_);
    for (index_t i = j + 1; i <= imax; ++i) {
      double acc = band_[i * stride + bw_ - (i - j)];
      const index_t kk0 = std::max({index_t{0}, i - bw_, j - bw_});
      for (index_t k = kk0; k < j; ++k) {
        acc -= band_[i * stride + bw_ - (i - k)] * band_[j * stride + bw_ - (j - k)];
      }
      band_[i * stride + bw_ - (i - j)] = acc / ljj;
    }
  }
}

void SpdFactorization::solve(std::span<const double> b, std::span<double> x) const {
  check(static_cast<index_t>(b.size()) == n_ && static_cast<index_t>(x.size()) == n_,
        "factorized solve: dimension mismatch");
  ++solve_count_;
  const std::size_t stride = static_cast<std::size_t>(bw_) + 1;
  std::copy(b.begin(), b.end(), x.begin());
  // Forward: L z = b.
  for (index_t i = 0; i < n_; ++i) {
    double acc = x[i];
    const index_t j0 = std::max<index_t>(0, i - bw_);
    for (index_t j = j0; j < i; ++j) {
      acc -= band_[i * stride + bw_ - (i - j)] * x[j];
    }
    x[i] = acc / band_[i * stride + bw_];
  }
  // Backward: L^T x = z.
  for (index_t i = n_ - 1; i >= 0; --i) {
    double acc = x[i];
    const index_t jmax = std::min<index_t>(n_ - 1, i + bw_);
    for (index_t j = i + 1; j <= jmax; ++j) {
      acc -= band_[j * stride + bw_ - (j - i)] * x[j];
    }
    x[i] = acc / band_[i * stride + bw_];
  }
}

std::vector<double> SpdFactorization::solve(std::span<const double> b) const {
  std::vector<double> x(b.size());
  solve(b, x);
  return x;
}

}  // namespace parasol
