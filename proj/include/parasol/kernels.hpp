#pragma once

// Dense level-1 vector kernels used by the Gram-matrix and Krylov inner loops.
// A scalar reference implementation always exists; on x86-64 an AVX2+FMA variant
// and on AArch64 a NEON variant are compiled in and selected once at startup.
// The environment variable PARASOL_SIMD (values: scalar, avx2, neon, auto)
// forces a tier, which is useful for equivalence testing and debugging.

#include <cstddef>
#include <span>
#include <string_view>

namespace parasol::simd {

/// Inner product sum_i x[i]*y[i].
double dot(std::span<const double> x, std::span<const double> y);

/// Squared Euclidean norm.
double norm_sq(std::span<const double> x);

/// y += a*x.
void axpy(double a, std::span<const double> x, std::span<double> y);

/// y = x + a*y.
void aypx(double a, std::span<const double> x, std::span<double> y);

/// x *= a.
void scal(double a, std::span<double> x);

/// Name of the kernel tier selected at startup ("scalar", "avx2", "neon").
std::string_view active_isa();

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void aypx_scalar(double a, const double* x, double* y, std::size_t n);
void scal_scalar(double a, double* x, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void aypx_avx2(double a, const double* x, double* y, std::size_t n);
void scal_avx2(double a, double* x, std::size_t n);
#endif

#if defined(__aarch64__)
double dot_neon(const double* x, const double* y, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
void aypx_neon(double a, const double* x, double* y, std::size_t n);
void scal_neon(double a, double* x, std::size_t n);
#endif

}  // namespace detail

}  // namespace parasol::simd
