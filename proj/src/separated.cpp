#include "parasol/separated.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parasol/kernels.hpp"

namespace parasol {

void SeparatedVector::append(std::span<const double> a, std::span<const double> b) {
  if (static_cast<index_t>(a.size()) != n_space_ ||
      static_cast<index_t>(b.size()) != n_time_) {
    throw std::invalid_argument("separated append: factor size mismatch");
  }
  space_.insert(space_.end(), a.begin(), a.end());
  time_.insert(time_.end(), b.begin(), b.end());
  ++rank_;
}

void SeparatedVector::append_scaled(double c, std::span<const double> a,
                                    std::span<const double> b) {
  append(a, b);
  simd::scal(c, space_col(rank_ - 1));
}

void SeparatedVector::append_all_scaled(double c, const SeparatedVector& other) {
  for (index_t j = 0; j < other.rank(); ++j) {
    append_scaled(c, other.space_col(j), other.time_col(j));
  }
}

double SeparatedVector::entry(index_t i, index_t l) const {
  double acc = 0.0;
  for (index_t j = 0; j < rank_; ++j) {
    acc += space_col(j)[i] * time_col(j)[l];
  }
  return acc;
}

void SpaceFactor::apply(std::span<const double> v, std::span<double> out,
                        Workspace& ws) const {
  const std::size_t n = static_cast<std::size_t>(dim);
  ws.t0.resize(n);
  ws.t1.resize(n);
  std::span<const double> cur = v;
  if (right != nullptr) {
    right->apply(cur, ws.t0);
    cur = ws.t0;
  }
  if (middle != nullptr) {
    middle->solve(cur, ws.t1);
    cur = ws.t1;
  }
  if (left != nullptr) {
    left->apply_transposed(cur, out);
  } else if (cur.data() != out.data()) {
    std::copy(cur.begin(), cur.end(), out.begin());
  }
}

std::vector<double> SpaceFactor::apply(std::span<const double> v) const {
  Workspace ws;
  std::vector<double> out(v.size());
  apply(v, out, ws);
  return out;
}

double SpaceFactor::quad_form(std::span<const double> v, Workspace& ws) const {
  const std::size_t n = static_cast<std::size_t>(dim);
  ws.t0.resize(n);
  ws.t1.resize(n);
  std::span<const double> rv = v;
  if (right != nullptr) {
    right->apply(rv, ws.t0);
    rv = ws.t0;
  }
  if (middle != nullptr) {
    middle->solve(rv, ws.t1);
    rv = ws.t1;
  }
  if (left == nullptr) return simd::dot(v, rv);
  // rv currently lives in t0 or t1 (or v); use the free buffer for left*v.
  std::vector<double>& lbuf = (rv.data() == ws.t0.data()) ? ws.t1 : ws.t0;
  if (rv.data() == v.data()) {
    left->apply(v, ws.t0);
    return simd::dot(ws.t0, rv);
  }
  left->apply(v, lbuf);
  return simd::dot(lbuf, rv);
}

std::vector<double> SpaceFactor::diagonal() const {
  if (middle != nullptr) {
    throw std::logic_error("diagonal() requires an identity middle factor");
  }
  const std::size_t n = static_cast<std::size_t>(dim);
  std::vector<double> d(n, 0.0);
  if (left == nullptr && right == nullptr) {
    std::fill(d.begin(), d.end(), 1.0);
    return d;
  }
  if (left == nullptr) {
    return right->diagonal();
  }
  if (right == nullptr) {
    return left->diagonal();
  }
  // diag(left^T right)_j = sum_k left(k, j) * right(k, j): accumulate the
  // per-row intersections of the two sorted sparsity patterns.
  const auto lo = left->row_offsets();
  const auto lc = left->col_indices();
  const auto lv = left->values();
  const auto ro = right->row_offsets();
  const auto rc = right->col_indices();
  const auto rv = right->values();
  for (index_t k = 0; k < left->rows(); ++k) {
    index_t i = lo[k];
    index_t j = ro[k];
    while (i < lo[k + 1] && j < ro[k + 1]) {
      if (lc[i] == rc[j]) {
        d[lc[i]] += lv[i] * rv[j];
        ++i;
        ++j;
      } else if (lc[i] < rc[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  return d;
}

SeparatedVector KroneckerSumOperator::apply(const SeparatedVector& x) const {
  SeparatedVector y(n_space_, n_time_);
  SpaceFactor::Workspace ws;
  std::vector<double> a(static_cast<std::size_t>(n_space_));
  std::vector<double> b(static_cast<std::size_t>(n_time_));
  for (const KronTerm& term : terms_) {
    for (index_t j = 0; j < x.rank(); ++j) {
      term.space.apply(x.space_col(j), a, ws);
      simd::scal(term.weight, a);
      term.time.apply(x.time_col(j), b);
      y.append(a, b);
    }
  }
  return y;
}

void SpaceWeight::apply(std::span<const double> v, std::span<double> out) const {
  if (factor_ != nullptr) {
    SpaceFactor::Workspace ws;
    factor_->apply(v, out, ws);
  } else if (matrix_ != nullptr) {
    matrix_->apply(v, out);
  } else {
    std::copy(v.begin(), v.end(), out.begin());
  }
}

void TimeWeight::apply(std::span<const double> v, std::span<double> out) const {
  if (matrix_ != nullptr) {
    matrix_->apply(v, out);
  } else {
    std::copy(v.begin(), v.end(), out.begin());
  }
}

double gram_norm_sq(const SeparatedVector& x, const SpaceWeight& ws,
                    const TimeWeight& wt) {
  const index_t J = x.rank();
  if (J == 0) return 0.0;
  const std::size_t ns = static_cast<std::size_t>(x.n_space());
  const std::size_t nt = static_cast<std::size_t>(x.n_time());
  std::vector<double> wa(ns * static_cast<std::size_t>(J));
  std::vector<double> wb(nt * static_cast<std::size_t>(J));
  for (index_t j = 0; j < J; ++j) {
    ws.apply(x.space_col(j), {wa.data() + ns * j, ns});
    wt.apply(x.time_col(j), {wb.data() + nt * j, nt});
  }
  double total = 0.0;
  for (index_t i = 0; i < J; ++i) {
    for (index_t j = 0; j < J; ++j) {
      const double gs = simd::dot(x.space_col(i), {wa.data() + ns * j, ns});
      if (gs == 0.0) continue;
      const double gt = simd::dot(x.time_col(i), {wb.data() + nt * j, nt});
      total += gs * gt;
    }
  }
  return total;
}

double gram_norm_sq(const SeparatedVector& x) {
  return gram_norm_sq(x, SpaceWeight::identity(), TimeWeight::identity());
}

double clamped_sqrt(double value, double scale) {
  if (value >= 0.0) return std::sqrt(value);
  if (value >= -1e-14 * scale) return 0.0;
  throw std::runtime_error("gram norm is negative beyond round-off tolerance");
}

}  // namespace parasol
