// Command-line front end: single solves, cross-method residual comparisons,
// convergence sweeps, and CPU-time tables, emitted as line-delimited JSON or
// CSV. Exit codes: 0 converged (or command succeeded), 2 solver stopped
// without convergence, 1 usage or runtime error.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "parasol/harness.hpp"

namespace {

struct OutputOpts {
  std::string path;
  std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOpts& out) {
  cmd->add_option("--out", out.path, "Output path (default: stdout)");
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void add_case_flag(CLI::App* cmd, std::string& name) {
  cmd->add_option("--case", name,
                  "Problem: heat-manufactured | time-diffusion | "
                  "advection-diffusion | zero")
      ->capture_default_str();
}

void add_grid_flags(CLI::App* cmd, parasol::index_t& nh, parasol::index_t& nk) {
  cmd->add_option("--nh-exp", nh, "Mesh: 2^L cells per side")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  cmd->add_option("--nk-exp", nk, "Time grid: 2^K elements")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, parasol::SolverConfig& cfg) {
  cmd->add_option("--eps-greedy", cfg.eps_greedy,
                  "Relative-increment stopping tolerance")
      ->capture_default_str();
  cmd->add_option("--eps-alt", cfg.eps_alt,
                  "Alternating-minimization stagnation tolerance (on the "
                  "squared sweep-to-sweep change)")
      ->capture_default_str();
  cmd->add_option("--max-rank", cfg.max_rank, "Greedy iteration cap")
      ->capture_default_str();
  cmd->add_option("--max-alt-sweeps", cfg.max_alt_sweeps,
                  "Alternating sweeps cap per rank-one term")
      ->capture_default_str();
  cmd->add_option("--cg-tol", cfg.cg_tol, "Space-solver relative tolerance")
      ->capture_default_str();
  cmd->add_option("--cg-max-iter", cfg.cg_max_iter,
                  "Space-solver iteration cap (0: twice the space dimension)")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Random-initialization seed")
      ->capture_default_str();
}

int emit(const OutputOpts& out, const std::string& json, const std::string& csv) {
  const std::string& text = out.format == "csv" ? csv : json;
  if (out.path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream file(out.path);
  if (!file) {
    std::fprintf(stderr, "error: cannot open output file '%s'\n",
                 out.path.c_str());
    return 1;
  }
  file << text;
  return file ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Low-rank space-time minimal-residual solver for parabolic problems"};
  app.require_subcommand(1);

  parasol::SolveRequest solve_req;
  OutputOpts solve_out;
  CLI::App* solve = app.add_subcommand("solve", "Run one greedy solve");
  add_case_flag(solve, solve_req.problem);
  solve->add_option("--method", solve_req.method, "Formulation (1, 2, or 3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  add_grid_flags(solve, solve_req.nh_exp, solve_req.nk_exp);
  solve->add_flag("--pg-refined", solve_req.pg_refined,
                  "Method 2: twice-finer test mesh");
  add_solver_flags(solve, solve_req.config);
  solve->add_flag("--errors,!--no-errors", solve_req.evaluate_errors,
                  "Evaluate errors against the closed-form solution");
  add_output_flags(solve, solve_out);

  parasol::CompareRequest cmp_req;
  OutputOpts cmp_out;
  CLI::App* compare = app.add_subcommand(
      "compare", "Run all three methods; residuals in the method-1 system");
  add_case_flag(compare, cmp_req.problem);
  add_grid_flags(compare, cmp_req.nh_exp, cmp_req.nk_exp);
  compare->add_flag("--pg-refined", cmp_req.pg_refined,
                    "Method 2: twice-finer test mesh");
  add_solver_flags(compare, cmp_req.config);
  add_output_flags(compare, cmp_out);

  parasol::ConvergenceRequest conv_req;
  OutputOpts conv_out;
  CLI::App* conv =
      app.add_subcommand("convergence", "Error sweep with fitted orders");
  add_case_flag(conv, conv_req.problem);
  conv->add_option("--method", conv_req.method, "Formulation (1, 2, or 3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  conv->add_option("--axis", conv_req.axis, "Swept axis")
      ->check(CLI::IsMember({"space", "time"}))
      ->capture_default_str();
  conv->add_option("--levels", conv_req.levels,
                   "Swept dyadic exponents (at least 3)")
      ->required()
      ->delimiter(',');
  conv->add_option("--fixed-level", conv_req.fixed_level,
                   "Exponent held fixed on the other axis")
      ->required();
  conv->add_option("--ref-nh-exp", conv_req.ref_nh_exp,
                   "Reference mesh exponent (-1: default policy)")
      ->capture_default_str();
  conv->add_option("--ref-nk-exp", conv_req.ref_nk_exp,
                   "Reference time exponent (-1: default policy)")
      ->capture_default_str();
  conv->add_option("--fit-points", conv_req.fit_points,
                   "Finest levels used in the slope fit")
      ->capture_default_str();
  conv->add_flag("--pg-refined", conv_req.pg_refined,
                 "Method 2: twice-finer test mesh");
  add_solver_flags(conv, conv_req.config);
  add_output_flags(conv, conv_out);

  parasol::CpuTableRequest cpu_req;
  OutputOpts cpu_out;
  CLI::App* cpu = app.add_subcommand(
      "cputable", "Median solve times over repeated random initializations");
  add_case_flag(cpu, cpu_req.problem);
  add_grid_flags(cpu, cpu_req.nh_exp, cpu_req.nk_exp);
  cpu->add_option("--reps", cpu_req.repetitions, "Repetitions per method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cpu->add_option("--seed", cpu_req.base_seed, "Base seed for repetitions")
      ->capture_default_str();
  cpu->add_flag("--pg-refined", cpu_req.pg_refined,
                "Method 2: twice-finer test mesh");
  cpu->add_option("--eps-greedy", cpu_req.config.eps_greedy,
                  "Relative-increment stopping tolerance")
      ->capture_default_str();
  cpu->add_option("--eps-alt", cpu_req.config.eps_alt,
                  "Alternating-minimization stagnation tolerance (on the "
                  "squared sweep-to-sweep change)")
      ->capture_default_str();
  cpu->add_option("--max-rank", cpu_req.config.max_rank, "Greedy iteration cap")
      ->capture_default_str();
  add_output_flags(cpu, cpu_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      const parasol::SolveOutcome outcome = parasol::run_solve(solve_req);
      const int io = emit(solve_out, parasol::write_json(outcome.record),
                          parasol::write_csv(outcome.record));
      if (io != 0) return io;
      return outcome.result.status == parasol::SolveStatus::converged ? 0 : 2;
    }
    if (compare->parsed()) {
      const parasol::ComparisonRecord rec = parasol::run_compare(cmp_req);
      for (const int m : rec.ordering_violations) {
        std::fprintf(stderr,
                     "warning: iteration %d: method-1 residual exceeds the "
                     "other methods'\n",
                     m);
      }
      return emit(cmp_out, parasol::write_json(rec), parasol::write_csv(rec));
    }
    if (conv->parsed()) {
      const parasol::ConvergenceRecord rec = parasol::run_convergence(conv_req);
      return emit(conv_out, parasol::write_json(rec), parasol::write_csv(rec));
    }
    const parasol::CpuTableRecord rec = parasol::run_cputable(cpu_req);
    return emit(cpu_out, parasol::write_json(rec), parasol::write_csv(rec));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
