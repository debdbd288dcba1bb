#pragma once

// Experiment drivers shared by the CLI and the test suites: single solves
// with error evaluation, cross-method residual comparisons, convergence
// sweeps with order fits, and median-timing tables.

#include <cstdint>
#include <string>
#include <vector>

#include "parasol/greedy.hpp"
#include "parasol/norms.hpp"
#include "parasol/problems.hpp"
#include "parasol/records.hpp"

namespace parasol {

struct SolveRequest {
  std::string problem = "heat-manufactured";
  int method = 1;
  index_t nh_exp = 2;  // mesh: 2^nh_exp cells per side
  index_t nk_exp = 2;  // grid: 2^nk_exp time elements
  bool pg_refined = false;
  SolverConfig config;
  /// Evaluate errors against the closed-form solution (skipped silently for
  /// problems without one). The reference frame lives on levels
  /// (max(nh_exp, 7), max(nk_exp, 13)).
  bool evaluate_errors = true;
};

struct SolveOutcome {
  RunRecord record;
  GreedyResult result;
};

SolveOutcome run_solve(const SolveRequest& req);

struct CompareRequest {
  std::string problem = "heat-manufactured";
  index_t nh_exp = 2;
  index_t nk_exp = 2;
  bool pg_refined = false;
  SolverConfig config;
};

/// Runs all three methods on the same discretization and measures every
/// iterate's residual in the first method's system. Records the iterations m
/// (up to the shortest run) where r_1^m exceeds min(r_2^m, r_3^m).
ComparisonRecord run_compare(const CompareRequest& req);

struct ConvergenceRequest {
  std::string problem = "heat-manufactured";
  int method = 1;
  std::string axis = "space";   // "space" | "time"
  std::vector<index_t> levels;  // swept dyadic exponents
  index_t fixed_level = 0;      // exponent held fixed on the other axis
  /// Reference-frame levels; negative values select the default: problems
  /// with a closed-form solution use (max(7, levels), max(13, levels)),
  /// others use finest swept level + 2 on the sweep axis and the fixed level
  /// on the other, with the reference computed by the same method/config.
  index_t ref_nh_exp = -1;
  index_t ref_nk_exp = -1;
  bool pg_refined = false;
  SolverConfig config;
  int fit_points = 4;  // slope fit uses the finest min(fit_points, n) levels
};

ConvergenceRecord run_convergence(const ConvergenceRequest& req);

struct CpuTableRequest {
  std::string problem = "heat-manufactured";
  index_t nh_exp = 2;
  index_t nk_exp = 2;
  int repetitions = 21;
  std::uint64_t base_seed = 0;  // per-repetition seeds derived via mix64
  bool pg_refined = false;
  SolverConfig config;
};

/// Median solver wall time per method over `repetitions` random
/// initializations, with methods 2 and 3 normalized by method 1.
CpuTableRecord run_cputable(const CpuTableRequest& req);

}  // namespace parasol
