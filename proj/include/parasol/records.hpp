#pragma once

// Result records for solver runs and experiment sweeps, with a
// line-delimited JSON serialization (meta line, one line per iteration or
// sweep point, summary line), CSV mirrors for plotting, and parsers that
// round-trip the JSON exactly (floating-point written with 17 significant
// digits).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "parasol/greedy.hpp"

namespace parasol {

inline constexpr int kSchemaVersion = 1;

/// Software version string baked in at build time.
const char* software_version();

struct RunRecord {
  int schema_version = kSchemaVersion;
  std::string version = software_version();
  std::string kernel_isa;
  std::string problem;
  int method = 1;
  index_t nh_exp = 0;
  index_t nk_exp = 0;
  index_t n_space = 0;
  index_t n_time = 0;
  bool pg_refined = false;
  double eps_greedy = 0.0;
  double eps_alt = 0.0;
  int max_rank = 0;
  int max_alt_sweeps = 0;
  double cg_tol = 0.0;
  int cg_max_iter = 0;
  std::uint64_t seed = 0;

  std::vector<IterationRow> iterations;

  std::string status;
  double g_norm = 0.0;
  double error_l2h1 = -1.0;   // negative: not evaluated
  double error_h1hm1 = -1.0;
  std::int64_t space_solves = 0;
  std::int64_t pcg_iterations = 0;
  std::int64_t time_solves = 0;
  std::int64_t total_alt_sweeps = 0;
  double wall_seconds = 0.0;

  bool operator==(const RunRecord&) const = default;
};

/// Per-iteration residuals of each method's iterates, all measured in the
/// first method's system.
struct ComparisonRecord {
  int schema_version = kSchemaVersion;
  std::string version = software_version();
  std::string problem;
  index_t nh_exp = 0;
  index_t nk_exp = 0;
  bool pg_refined = false;
  std::uint64_t seed = 0;
  double eps_greedy = 0.0;
  double eps_alt = 0.0;
  int max_rank = 0;

  std::array<std::vector<double>, 3> r;  // r[i-1][m-1]
  std::vector<int> ordering_violations;  // m where r1 > min(r2, r3)

  bool operator==(const ComparisonRecord&) const = default;
};

struct ConvergencePoint {
  index_t level = 0;
  double param = 0.0;  // mesh size or time step
  double error_l2h1 = 0.0;
  double error_h1hm1 = 0.0;
  int iterations = 0;
  std::string status;

  bool operator==(const ConvergencePoint&) const = default;
};

struct ConvergenceRecord {
  int schema_version = kSchemaVersion;
  std::string version = software_version();
  std::string problem;
  int method = 1;
  std::string axis;  // "space" | "time"
  index_t fixed_level = 0;
  index_t ref_nh_exp = 0;
  index_t ref_nk_exp = 0;
  bool pg_refined = false;
  std::uint64_t seed = 0;

  std::vector<ConvergencePoint> points;
  int fit_points = 0;  // slopes fitted over the finest fit_points levels
  double slope_l2h1 = 0.0;
  double slope_h1hm1 = 0.0;

  bool operator==(const ConvergenceRecord&) const = default;
};

struct CpuTableRecord {
  int schema_version = kSchemaVersion;
  std::string version = software_version();
  std::string problem;
  index_t nh_exp = 0;
  index_t nk_exp = 0;
  int repetitions = 0;
  std::uint64_t base_seed = 0;

  std::array<double, 3> median_seconds{};
  double ratio2 = 0.0;  // method 2 / method 1
  double ratio3 = 0.0;

  bool operator==(const CpuTableRecord&) const = default;
};

std::string write_json(const RunRecord& r);
std::string write_json(const ComparisonRecord& r);
std::string write_json(const ConvergenceRecord& r);
std::string write_json(const CpuTableRecord& r);

std::string write_csv(const RunRecord& r);
std::string write_csv(const ComparisonRecord& r);
std::string write_csv(const ConvergenceRecord& r);
std::string write_csv(const CpuTableRecord& r);

RunRecord parse_run_record(const std::string& text);
ComparisonRecord parse_comparison_record(const std::string& text);
ConvergenceRecord parse_convergence_record(const std::string& text);
CpuTableRecord parse_cputable_record(const std::string& text);

/// Formats a double with 17 significant digits (exact round-trip).
std::string format_double(double v);

}  // namespace parasol
