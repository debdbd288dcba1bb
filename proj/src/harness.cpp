#include "parasol/harness.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "parasol/kernels.hpp"
#include "parasol/system.hpp"

namespace parasol {

namespace {

void fill_common(RunRecord& rec, const SolveRequest& req, const MinResSystem& sys,
                 const GreedyResult& res) {
  rec.kernel_isa = std::string(simd::active_isa());
  rec.problem = req.problem;
  rec.method = req.method;
  rec.nh_exp = req.nh_exp;
  rec.nk_exp = req.nk_exp;
  rec.n_space = sys.n_space;
  rec.n_time = sys.n_time;
  rec.pg_refined = req.pg_refined;
  rec.eps_greedy = req.config.eps_greedy;
  rec.eps_alt = req.config.eps_alt;
  rec.max_rank = req.config.max_rank;
  rec.max_alt_sweeps = req.config.max_alt_sweeps;
  rec.cg_tol = req.config.cg_tol;
  rec.cg_max_iter = req.config.cg_max_iter;
  rec.seed = req.config.seed;
  rec.iterations = res.iterations;
  rec.status = to_string(res.status);
  rec.g_norm = res.g_norm;
  rec.space_solves = res.diag.pcg.calls;
  rec.pcg_iterations = res.diag.pcg.iterations;
  rec.time_solves = res.diag.time_solves;
  rec.total_alt_sweeps = res.diag.total_alt_sweeps;
  rec.wall_seconds = res.diag.wall_seconds;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("median of empty sample");
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SolveOutcome run_solve(const SolveRequest& req) {
  const Problem p = problem_by_name(req.problem);
  const auto sd = discretize_space(p, index_t{1} << req.nh_exp);
  const auto td = discretize_time(p, index_t{1} << req.nk_exp);
  const MinResSystem sys =
      assemble_system(p, sd, td, method_from_int(req.method), req.pg_refined);

  SolveOutcome out;
  out.result = greedy_solve(sys, req.config);
  fill_common(out.record, req, sys, out.result);

  if (req.evaluate_errors && p.exact) {
    const index_t fl = std::max<index_t>(req.nh_exp, 7);
    const index_t fk = std::max<index_t>(req.nk_exp, 13);
    const ReferenceFrame frame = make_exact_frame(p, fl, fk);
    out.record.error_l2h1 = error_l2h1(out.result.u, req.nh_exp, req.nk_exp, frame);
    out.record.error_h1hm1 =
        error_h1hm1(out.result.u, req.nh_exp, req.nk_exp, frame);
  }
  return out;
}

ComparisonRecord run_compare(const CompareRequest& req) {
  const Problem p = problem_by_name(req.problem);
  const auto sd = discretize_space(p, index_t{1} << req.nh_exp);
  const auto td = discretize_time(p, index_t{1} << req.nk_exp);
  const MinResSystem sys1 = assemble_system(p, sd, td, Method::riesz);

  ComparisonRecord rec;
  rec.problem = req.problem;
  rec.nh_exp = req.nh_exp;
  rec.nk_exp = req.nk_exp;
  rec.pg_refined = req.pg_refined;
  rec.seed = req.config.seed;
  rec.eps_greedy = req.config.eps_greedy;
  rec.eps_alt = req.config.eps_alt;
  rec.max_rank = req.config.max_rank;

  for (int mi = 1; mi <= 3; ++mi) {
    const MinResSystem sys =
        assemble_system(p, sd, td, method_from_int(mi), req.pg_refined);
    const GreedyResult res = greedy_solve(sys, req.config);
    ResidualTracker tracker(sys1);
    auto& curve = rec.r[static_cast<std::size_t>(mi - 1)];
    curve.reserve(static_cast<std::size_t>(res.u.rank()));
    for (index_t j = 0; j < res.u.rank(); ++j) {
      tracker.append(res.u.space_col(j), res.u.time_col(j));
      curve.push_back(tracker.rel_residual());
    }
  }

  const std::size_t common = std::min(
      {rec.r[0].size(), rec.r[1].size(), rec.r[2].size()});
  for (std::size_t m = 0; m < common; ++m) {
    if (rec.r[0][m] > std::min(rec.r[1][m], rec.r[2][m])) {
      rec.ordering_violations.push_back(static_cast<int>(m + 1));
    }
  }
  return rec;
}

ConvergenceRecord run_convergence(const ConvergenceRequest& req) {
  const bool space_axis = req.axis == "space";
  if (!space_axis && req.axis != "time") {
    throw std::invalid_argument("axis must be 'space' or 'time'");
  }
  if (req.levels.size() < 3) {
    throw std::invalid_argument(
        "convergence sweep needs at least 3 levels to fit a slope");
  }
  const Problem p = problem_by_name(req.problem);
  const index_t finest = *std::max_element(req.levels.begin(), req.levels.end());
  const index_t sweep_space = space_axis ? finest : req.fixed_level;
  const index_t sweep_time = space_axis ? req.fixed_level : finest;

  index_t ref_l = req.ref_nh_exp;
  index_t ref_k = req.ref_nk_exp;
  if (ref_l < 0) {
    ref_l = p.exact ? std::max<index_t>(7, sweep_space)
                    : (space_axis ? finest + 2 : req.fixed_level);
  }
  if (ref_k < 0) {
    ref_k = p.exact ? std::max<index_t>(13, sweep_time)
                    : (space_axis ? req.fixed_level : finest + 2);
  }
  if (ref_l < sweep_space || ref_k < sweep_time) {
    throw std::invalid_argument("reference levels must dominate the sweep");
  }

  ReferenceFrame frame;
  if (p.exact) {
    frame = make_exact_frame(p, ref_l, ref_k);
  } else {
    const auto sd = discretize_space(p, index_t{1} << ref_l);
    const auto td = discretize_time(p, index_t{1} << ref_k);
    const MinResSystem sys =
        assemble_system(p, sd, td, method_from_int(req.method), req.pg_refined);
    const GreedyResult res = greedy_solve(sys, req.config);
    frame = make_computed_frame(ref_l, ref_k, res.u);
  }

  ConvergenceRecord rec;
  rec.problem = req.problem;
  rec.method = req.method;
  rec.axis = req.axis;
  rec.fixed_level = req.fixed_level;
  rec.ref_nh_exp = ref_l;
  rec.ref_nk_exp = ref_k;
  rec.pg_refined = req.pg_refined;
  rec.seed = req.config.seed;

  for (const index_t lev : req.levels) {
    const index_t lh = space_axis ? lev : req.fixed_level;
    const index_t lk = space_axis ? req.fixed_level : lev;
    const auto sd = discretize_space(p, index_t{1} << lh);
    const auto td = discretize_time(p, index_t{1} << lk);
    const MinResSystem sys =
        assemble_system(p, sd, td, method_from_int(req.method), req.pg_refined);
    const GreedyResult res = greedy_solve(sys, req.config);

    ConvergencePoint pt;
    pt.level = lev;
    pt.param = space_axis ? 1.0 / static_cast<double>(index_t{1} << lh)
                          : p.horizon() / static_cast<double>(index_t{1} << lk);
    pt.error_l2h1 = error_l2h1(res.u, lh, lk, frame);
    pt.error_h1hm1 = error_h1hm1(res.u, lh, lk, frame);
    pt.iterations = static_cast<int>(res.iterations.size());
    pt.status = to_string(res.status);
    rec.points.push_back(std::move(pt));
  }

  // Fit over the finest levels (smallest mesh parameters).
  std::vector<ConvergencePoint> sorted = rec.points;
  std::sort(sorted.begin(), sorted.end(),
            [](const ConvergencePoint& a, const ConvergencePoint& b) {
              return a.param > b.param;
            });
  const int nfit =
      std::min<int>(req.fit_points, static_cast<int>(sorted.size()));
  rec.fit_points = nfit;
  std::vector<std::pair<double, double>> pts_l2h1, pts_h1hm1;
  for (std::size_t i = sorted.size() - static_cast<std::size_t>(nfit);
       i < sorted.size(); ++i) {
    pts_l2h1.emplace_back(sorted[i].param, sorted[i].error_l2h1);
    pts_h1hm1.emplace_back(sorted[i].param, sorted[i].error_h1hm1);
  }
  rec.slope_l2h1 = fit_convergence_slope(pts_l2h1);
  rec.slope_h1hm1 = fit_convergence_slope(pts_h1hm1);
  return rec;
}

CpuTableRecord run_cputable(const CpuTableRequest& req) {
  if (req.repetitions < 1) {
    throw std::invalid_argument("repetitions must be positive");
  }
  const Problem p = problem_by_name(req.problem);
  const auto sd = discretize_space(p, index_t{1} << req.nh_exp);
  const auto td = discretize_time(p, index_t{1} << req.nk_exp);

  CpuTableRecord rec;
  rec.problem = req.problem;
  rec.nh_exp = req.nh_exp;
  rec.nk_exp = req.nk_exp;
  rec.repetitions = req.repetitions;
  rec.base_seed = req.base_seed;

  for (int mi = 1; mi <= 3; ++mi) {
    const MinResSystem sys =
        assemble_system(p, sd, td, method_from_int(mi), req.pg_refined);
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(req.repetitions));
    for (int rep = 0; rep < req.repetitions; ++rep) {
      SolverConfig cfg = req.config;
      cfg.seed = mix64(req.base_seed + static_cast<std::uint64_t>(rep));
      const GreedyResult res = greedy_solve(sys, cfg);
      times.push_back(res.diag.wall_seconds);
    }
    rec.median_seconds[static_cast<std::size_t>(mi - 1)] = median(times);
  }
  rec.ratio2 = rec.median_seconds[1] / rec.median_seconds[0];
  rec.ratio3 = rec.median_seconds[2] / rec.median_seconds[0];
  return rec;
}

}  // namespace parasol
