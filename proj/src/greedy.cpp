#include "parasol/greedy.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "parasol/kernels.hpp"

namespace parasol {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index) {
  const std::uint64_t h = mix64(seed + mix64(iteration + mix64(index)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::stagnated:
      return "stagnated";
    case SolveStatus::max_rank_reached:
      return "max_rank_reached";
  }
  return "unknown";
}

namespace {

/// The X-norm quadratic forms are nonnegative by construction; a negative
/// Gram total is cancellation noise around an exact zero.
double sqrt_or_zero(double sq) { return sq > 0.0 ? std::sqrt(sq) : 0.0; }

double mass_norm(std::span<const double> s, const TriDiagMatrix& mass,
                 std::vector<double>& tmp) {
  tmp.resize(s.size());
  mass.apply(s, tmp);
  return sqrt_or_zero(simd::dot(s, tmp));
}

double rank_one_xnorm_sq(std::span<const double> v, std::span<const double> s,
                         const MinResSystem& sys) {
  SeparatedVector one(sys.n_space, sys.n_time);
  one.append(v, s);
  return xnorm_sq(one, sys.norms);
}

double rank_one_xnorm(std::span<const double> v, std::span<const double> s,
                      const MinResSystem& sys) {
  return sqrt_or_zero(rank_one_xnorm_sq(v, s, sys));
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(now - start).count();
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.eps_greedy > 0.0 && cfg.eps_greedy < 1.0)) {
    throw std::invalid_argument("eps_greedy must lie in (0, 1)");
  }
  if (!(cfg.eps_alt > 0.0 && cfg.eps_alt < 1.0)) {
    throw std::invalid_argument("eps_alt must lie in (0, 1)");
  }
  if (cfg.max_rank < 0) throw std::invalid_argument("max_rank must be nonnegative");
  if (cfg.max_alt_sweeps < 1) {
    throw std::invalid_argument("max_alt_sweeps must be positive");
  }
}

}  // namespace

AlsResult als_rank_one(const ResidualTracker& tracker, const SolverConfig& cfg,
                       int iteration, PcgStats* stats,
                       std::int64_t* time_solves) {
  const MinResSystem& sys = tracker.system();
  const std::size_t ns = static_cast<std::size_t>(sys.n_space);
  const std::size_t nt = static_cast<std::size_t>(sys.n_time);
  const int max_iter = cfg.cg_max_iter > 0 ? cfg.cg_max_iter : 2 * sys.n_space;

  AlsResult out;
  std::vector<double> s(nt);
  for (std::size_t l = 0; l < nt; ++l) {
    s[l] = uniform01(cfg.seed, static_cast<std::uint64_t>(iteration), l);
  }
  std::vector<double> tmp;
  {
    const double nrm = mass_norm(s, sys.norms.time_mass, tmp);
    if (nrm == 0.0) {
      std::fill(s.begin(), s.end(), 1.0);
    }
    const double n2 = nrm == 0.0 ? mass_norm(s, sys.norms.time_mass, tmp) : nrm;
    simd::scal(1.0 / n2, s);
  }

  std::vector<double> v(ns, 0.0);
  std::vector<double> v_prev;
  std::vector<double> s_prev;

  for (int sweep = 1; sweep <= cfg.max_alt_sweeps; ++sweep) {
    out.sweeps = sweep;

    const ReducedSpaceProblem red = reduce_to_space(tracker, s);
    const LinearMap apply = make_space_map(sys, red.coeff);
    const LinearMap precondition = make_space_preconditioner(sys, red);
    PcgResult pr = pcg_solve(apply, red.rhs, precondition, cfg.cg_tol, max_iter,
                             v, stats);
    v = std::move(pr.x);
    if (simd::norm_sq(v) == 0.0) {
      out.zero_factor = true;
      out.v.assign(ns, 0.0);
      out.s.assign(nt, 0.0);
      return out;
    }
    if (cfg.half_step_observer) cfg.half_step_observer(tracker, v, s);

    const ReducedTimeProblem rt = reduce_to_time(tracker, v);
    std::vector<double> s_raw = solve_sym_tridiagonal(rt.matrix, rt.rhs);
    if (time_solves != nullptr) ++*time_solves;
    const double nrm = mass_norm(s_raw, sys.norms.time_mass, tmp);
    if (nrm == 0.0) {
      out.zero_factor = true;
      out.v.assign(ns, 0.0);
      out.s.assign(nt, 0.0);
      return out;
    }
    // Rescale so that ||s||_{M_k} = 1, absorbing the magnitude into v; the
    // represented rank-one tensor is unchanged.
    for (std::size_t l = 0; l < nt; ++l) s[l] = s_raw[l] / nrm;
    simd::scal(nrm, v);
    if (cfg.half_step_observer) cfg.half_step_observer(tracker, v, s);

    if (sweep >= 2) {
      SeparatedVector diff(sys.n_space, sys.n_time);
      diff.append(v, s);
      diff.append_scaled(-1.0, v_prev, s_prev);
      const double num_sq = std::max(xnorm_sq(diff, sys.norms), 0.0);
      const double den_sq = rank_one_xnorm_sq(v, s, sys);
      if (!(den_sq > 0.0)) {
        out.zero_factor = true;
        out.v.assign(ns, 0.0);
        out.s.assign(nt, 0.0);
        return out;
      }
      // Stagnation is measured on the squared X-norms: the sweep stops once
      // the energy of the last update falls below eps_alt times the energy of
      // the current iterate.
      if (num_sq < cfg.eps_alt * den_sq) break;
    }
    v_prev = v;
    s_prev = s;
  }
  out.v = std::move(v);
  out.s = std::move(s);
  return out;
}

AlsResult als_rank_one(const MinResSystem& sys, const SeparatedVector& u_prev,
                       const SolverConfig& cfg, int iteration, PcgStats* stats) {
  ResidualTracker tracker(sys);
  for (index_t j = 0; j < u_prev.rank(); ++j) {
    tracker.append(u_prev.space_col(j), u_prev.time_col(j));
  }
  return als_rank_one(tracker, cfg, iteration, stats, nullptr);
}

GreedyResult greedy_solve(const MinResSystem& sys, const SolverConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  GreedyResult res;
  res.u = SeparatedVector(sys.n_space, sys.n_time);
  ResidualTracker tracker(sys);
  res.g_norm = tracker.g_norm();
  if (res.g_norm == 0.0) {
    res.status = SolveStatus::converged;
    res.diag.wall_seconds = elapsed_seconds(start);
    return res;
  }

  res.status = SolveStatus::max_rank_reached;
  for (int m = 1; m <= cfg.max_rank; ++m) {
    AlsResult als =
        als_rank_one(tracker, cfg, m, &res.diag.pcg, &res.diag.time_solves);
    res.diag.total_alt_sweeps += als.sweeps;
    if (als.zero_factor) {
      res.status = SolveStatus::stagnated;
      break;
    }

    const double inc_norm = rank_one_xnorm(als.v, als.s, sys);
    tracker.append(als.v, als.s);
    res.u.append(als.v, als.s);
    const double u_norm = sqrt_or_zero(xnorm_sq(res.u, sys.norms));
    const double ratio = u_norm < 1e-300 ? 1.0 : inc_norm / u_norm;

    IterationRow row;
    row.iteration = m;
    row.rel_residual = tracker.rel_residual();
    row.rel_residual_pde = tracker.rel_residual_pde();
    row.rel_residual_ic = tracker.rel_residual_ic();
    row.objective = tracker.objective();
    row.increment_xnorm = inc_norm;
    row.xnorm_ratio = ratio;
    row.alt_sweeps = als.sweeps;
    row.space_solves = res.diag.pcg.calls;
    row.pcg_iterations = res.diag.pcg.iterations;
    row.wall_seconds = elapsed_seconds(start);
    res.iterations.push_back(row);

    if (ratio < cfg.eps_greedy) {
      res.status = SolveStatus::converged;
      break;
    }
  }
  res.diag.wall_seconds = elapsed_seconds(start);
  return res;
}

}  // namespace parasol
