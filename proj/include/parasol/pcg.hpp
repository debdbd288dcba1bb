#pragma once

// Preconditioned conjugate gradient on matrix-free operators.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace parasol {

/// y = A x; the callable must not alias x and y.
using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct PcgResult {
  std::vector<double> x;
  int iterations = 0;
  double rel_residual = 0.0;
};

struct PcgFailure : std::runtime_error {
  PcgFailure(int iterations, double rel_residual);
  int iterations;
  double rel_residual;
};

struct PcgStats {
  std::int64_t calls = 0;
  std::int64_t iterations = 0;
};

/// Solves A x = b for symmetric positive definite A with preconditioner
/// solve z = P^{-1} r. Stops when ||b - A x||_2 <= tol * ||b||_2; b = 0 gives
/// x = 0 immediately. Throws PcgFailure when max_iter is reached without
/// convergence. An empty x0 means a zero initial guess.
PcgResult pcg_solve(const LinearMap& apply, std::span<const double> b,
                    const LinearMap& precondition, double tol, int max_iter,
                    std::span<const double> x0 = {}, PcgStats* stats = nullptr);

}  // namespace parasol
