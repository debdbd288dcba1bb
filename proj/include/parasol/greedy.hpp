#pragma once

// Greedy rank-one solver: builds u^m = sum_n v^n (x) s^n by repeatedly
// computing a rank-one correction through alternating minimization of the
// quadratic residual energy, appending it, and stopping once the X-norm of
// the correction is small relative to the accumulated iterate.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "parasol/pcg.hpp"
#include "parasol/separated.hpp"
#include "parasol/system.hpp"

namespace parasol {

/// splitmix64 finalizer; building block of the counter-based generator.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic uniform draw in [0, 1) addressed by (seed, iteration, index).
double uniform01(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index);

struct SolverConfig {
  /// Greedy stop: X-norm of the latest rank-one increment relative to the
  /// X-norm of the accumulated solution.
  double eps_greedy = 1e-5;
  /// Alternating-sweep stop: squared X-norm of the change between consecutive
  /// sweeps relative to the squared X-norm of the current rank-one iterate.
  double eps_alt = 5e-2;
  int max_rank = 200;
  int max_alt_sweeps = 50;
  double cg_tol = 1e-10;
  int cg_max_iter = 0;  // 0 -> 2 * n_space
  std::uint64_t seed = 0;
  /// Invoked after every ALS half-step with the current candidate factors;
  /// tests hook this to verify objective monotonicity.
  std::function<void(const ResidualTracker&, std::span<const double>,
                     std::span<const double>)>
      half_step_observer;
};

enum class SolveStatus { converged, stagnated, max_rank_reached };

std::string to_string(SolveStatus s);

/// Per greedy iteration diagnostics; cumulative counters are measured since
/// the start of the solve.
struct IterationRow {
  int iteration = 0;             // 1-based; equals the rank after the append
  double rel_residual = 0.0;     // ||B u - g||_2 / ||g||_2
  double rel_residual_pde = 0.0;
  double rel_residual_ic = 0.0;
  double objective = 0.0;        // 1/2 u^T B u - u^T g
  double increment_xnorm = 0.0;  // ||v^m (x) s^m||_X
  double xnorm_ratio = 0.0;      // increment / ||u^m||_X (1 when ||u|| ~ 0)
  int alt_sweeps = 0;
  std::int64_t space_solves = 0;    // cumulative PCG calls
  std::int64_t pcg_iterations = 0;  // cumulative PCG iterations
  double wall_seconds = 0.0;        // cumulative

  bool operator==(const IterationRow&) const = default;
};

struct Diagnostics {
  PcgStats pcg;                     // calls = reduced space solves
  std::int64_t time_solves = 0;     // tridiagonal solves
  std::int64_t total_alt_sweeps = 0;
  double wall_seconds = 0.0;
};

struct GreedyResult {
  SolveStatus status = SolveStatus::converged;
  SeparatedVector u;
  std::vector<IterationRow> iterations;
  double g_norm = 0.0;
  Diagnostics diag;
};

struct AlsResult {
  std::vector<double> v;
  std::vector<double> s;
  int sweeps = 0;
  /// The residual contraction vanished (already at a critical point); the
  /// returned factors are zero and must not be appended.
  bool zero_factor = false;
};

/// One alternating-minimization pass for the best rank-one correction to
/// u_prev: random M_k-normalized initial time factor, then alternate
/// reduced-space PCG solves and reduced-time tridiagonal solves until the
/// squared X-norm stagnation ratio drops below eps_alt. `iteration` addresses
/// the random initialization stream.
AlsResult als_rank_one(const MinResSystem& sys, const SeparatedVector& u_prev,
                       const SolverConfig& cfg, int iteration = 1,
                       PcgStats* stats = nullptr);

/// Tracker-backed variant used by greedy_solve: identical math, residual
/// contraction served from the tracker's cached columns.
AlsResult als_rank_one(const ResidualTracker& tracker, const SolverConfig& cfg,
                       int iteration, PcgStats* stats,
                       std::int64_t* time_solves);

GreedyResult greedy_solve(const MinResSystem& sys, const SolverConfig& cfg);

}  // namespace parasol
