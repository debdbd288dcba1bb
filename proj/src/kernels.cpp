#include "parasol/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <cstring>

namespace parasol::simd {

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void aypx_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace detail

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*aypx)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  std::string_view name;
};

constexpr Dispatch kScalar{detail::dot_scalar, detail::axpy_scalar,
                           detail::aypx_scalar, detail::scal_scalar, "scalar"};

Dispatch select() {
  const char* forced = std::getenv("PARASOL_SIMD");
  const bool want_auto = forced == nullptr || std::strcmp(forced, "auto") == 0;
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
  const bool want_avx2 = want_auto || std::strcmp(forced, "avx2") == 0;
  if (want_avx2 && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Dispatch{detail::dot_avx2, detail::axpy_avx2, detail::aypx_avx2,
                    detail::scal_avx2, "avx2"};
  }
#endif
#if defined(__aarch64__)
  const bool want_neon = want_auto || std::strcmp(forced, "neon") == 0;
  if (want_neon) {
    return Dispatch{detail::dot_neon, detail::axpy_neon, detail::aypx_neon,
                    detail::scal_neon, "neon"};
  }
#endif
  return kScalar;
}

const Dispatch& table() {
  static const Dispatch d = select();
  return d;
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return table().dot(x.data(), y.data(), x.size());
}

double norm_sq(std::span<const double> x) {
  return table().dot(x.data(), x.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  table().axpy(a, x.data(), y.data(), x.size());
}

void aypx(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  table().aypx(a, x.data(), y.data(), x.size());
}

void scal(double a, std::span<double> x) { table().scal(a, x.data(), x.size()); }

std::string_view active_isa() { return table().name; }

}  // namespace parasol::simd
