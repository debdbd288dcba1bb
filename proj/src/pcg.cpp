#include "parasol/pcg.hpp"

#include <cmath>
#include <string>

#include "parasol/kernels.hpp"

namespace parasol {

PcgFailure::PcgFailure(int iterations_, double rel_residual_)
    : std::runtime_error("pcg did not converge within " +
                         std::to_string(iterations_) +
                         " iterations (achieved relative residual " +
                         std::to_string(rel_residual_) + ")"),
      iterations(iterations_),
      rel_residual(rel_residual_) {}

PcgResult pcg_solve(const LinearMap& apply, std::span<const double> b,
                    const LinearMap& precondition, double tol, int max_iter,
                    std::span<const double> x0, PcgStats* stats) {
  const std::size_t n = b.size();
  if (stats != nullptr) ++stats->calls;

  PcgResult result;
  result.x.assign(n, 0.0);
  const double bnorm = std::sqrt(simd::norm_sq(b));
  if (bnorm == 0.0) return result;

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z(n), p(n), Ap(n);
  if (!x0.empty()) {
    std::copy(x0.begin(), x0.end(), result.x.begin());
    apply(result.x, Ap);
    simd::axpy(-1.0, Ap, r);
  }

  precondition(r, z);
  p = z;
  double rz = simd::dot(r, z);
  double rnorm = std::sqrt(simd::norm_sq(r));

  for (int it = 0; it < max_iter; ++it) {
    if (rnorm <= tol * bnorm) {
      result.iterations = it;
      result.rel_residual = rnorm / bnorm;
      return result;
    }
    apply(p, Ap);
    if (stats != nullptr) ++stats->iterations;
    const double pAp = simd::dot(p, Ap);
    if (!(pAp > 0.0)) {
      throw std::runtime_error("pcg: operator is not positive definite");
    }
    const double alpha = rz / pAp;
    simd::axpy(alpha, p, result.x);
    simd::axpy(-alpha, Ap, r);
    rnorm = std::sqrt(simd::norm_sq(r));
    precondition(r, z);
    const double rz_next = simd::dot(r, z);
    simd::aypx(rz_next / rz, z, p);
    rz = rz_next;
  }
  if (rnorm <= tol * bnorm) {
    result.iterations = max_iter;
    result.rel_residual = rnorm / bnorm;
    return result;
  }
  throw PcgFailure(max_iter, rnorm / bnorm);
}

}  // namespace parasol
