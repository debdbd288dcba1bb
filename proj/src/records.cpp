#include "parasol/records.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace parasol {

const char* software_version() {
#ifdef PARASOL_VERSION
  return PARASOL_VERSION;
#else
  return "0.0.0";
#endif
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using nlohmann::json;

/// Minimal JSON object writer with deterministic key order and %.17g
/// floating-point formatting.
class LineWriter {
 public:
  explicit LineWriter(const char* record) {
    out_ = "{\"record\":\"";
    out_ += record;
    out_ += '"';
  }

  LineWriter& field(const char* key, const std::string& v) {
    begin(key);
    out_ += '"';
    out_ += v;  // record strings contain no characters needing escapes
    out_ += '"';
    return *this;
  }
  LineWriter& field(const char* key, const char* v) {
    return field(key, std::string(v));
  }
  LineWriter& field(const char* key, double v) {
    begin(key);
    out_ += format_double(v);
    return *this;
  }
  LineWriter& field(const char* key, bool v) {
    begin(key);
    out_ += v ? "true" : "false";
    return *this;
  }
  LineWriter& field(const char* key, std::int64_t v) {
    begin(key);
    out_ += std::to_string(v);
    return *this;
  }
  LineWriter& field(const char* key, int v) {
    return field(key, static_cast<std::int64_t>(v));
  }
  LineWriter& field(const char* key, std::uint64_t v) {
    begin(key);
    out_ += std::to_string(v);
    return *this;
  }
  LineWriter& field(const char* key, const std::vector<int>& v) {
    begin(key);
    out_ += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out_ += ',';
      out_ += std::to_string(v[i]);
    }
    out_ += ']';
    return *this;
  }

  std::string line() const { return out_ + "}\n"; }

 private:
  void begin(const char* key) {
    out_ += ",\"";
    out_ += key;
    out_ += "\":";
  }
  std::string out_;
};

std::vector<json> parse_lines(const std::string& text, const char* meta_record) {
  std::vector<json> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    lines.push_back(json::parse(line));
  }
  if (lines.empty() || lines.front().at("record") != meta_record) {
    throw std::invalid_argument(std::string("expected a ") + meta_record +
                                " line first");
  }
  return lines;
}

}  // namespace

std::string write_json(const RunRecord& r) {
  std::string out =
      LineWriter("run_meta")
          .field("schema_version", r.schema_version)
          .field("version", r.version)
          .field("kernel_isa", r.kernel_isa)
          .field("problem", r.problem)
          .field("method", r.method)
          .field("nh_exp", r.nh_exp)
          .field("nk_exp", r.nk_exp)
          .field("n_space", r.n_space)
          .field("n_time", r.n_time)
          .field("pg_refined", r.pg_refined)
          .field("eps_greedy", r.eps_greedy)
          .field("eps_alt", r.eps_alt)
          .field("max_rank", r.max_rank)
          .field("max_alt_sweeps", r.max_alt_sweeps)
          .field("cg_tol", r.cg_tol)
          .field("cg_max_iter", r.cg_max_iter)
          .field("seed", r.seed)
          .line();
  for (const IterationRow& it : r.iterations) {
    out += LineWriter("iteration")
               .field("iteration", it.iteration)
               .field("rel_residual", it.rel_residual)
               .field("rel_residual_pde", it.rel_residual_pde)
               .field("rel_residual_ic", it.rel_residual_ic)
               .field("objective", it.objective)
               .field("increment_xnorm", it.increment_xnorm)
               .field("xnorm_ratio", it.xnorm_ratio)
               .field("alt_sweeps", it.alt_sweeps)
               .field("space_solves", it.space_solves)
               .field("pcg_iterations", it.pcg_iterations)
               .field("wall_seconds", it.wall_seconds)
               .line();
  }
  out += LineWriter("summary")
             .field("status", r.status)
             .field("g_norm", r.g_norm)
             .field("iterations", static_cast<std::int64_t>(r.iterations.size()))
             .field("error_l2h1", r.error_l2h1)
             .field("error_h1hm1", r.error_h1hm1)
             .field("space_solves", r.space_solves)
             .field("pcg_iterations", r.pcg_iterations)
             .field("time_solves", r.time_solves)
             .field("total_alt_sweeps", r.total_alt_sweeps)
             .field("wall_seconds", r.wall_seconds)
             .line();
  return out;
}

RunRecord parse_run_record(const std::string& text) {
  const auto lines = parse_lines(text, "run_meta");
  RunRecord r;
  const json& meta = lines.front();
  r.schema_version = meta.at("schema_version").get<int>();
  r.version = meta.at("version").get<std::string>();
  r.kernel_isa = meta.at("kernel_isa").get<std::string>();
  r.problem = meta.at("problem").get<std::string>();
  r.method = meta.at("method").get<int>();
  r.nh_exp = meta.at("nh_exp").get<index_t>();
  r.nk_exp = meta.at("nk_exp").get<index_t>();
  r.n_space = meta.at("n_space").get<index_t>();
  r.n_time = meta.at("n_time").get<index_t>();
  r.pg_refined = meta.at("pg_refined").get<bool>();
  r.eps_greedy = meta.at("eps_greedy").get<double>();
  r.eps_alt = meta.at("eps_alt").get<double>();
  r.max_rank = meta.at("max_rank").get<int>();
  r.max_alt_sweeps = meta.at("max_alt_sweeps").get<int>();
  r.cg_tol = meta.at("cg_tol").get<double>();
  r.cg_max_iter = meta.at("cg_max_iter").get<int>();
  r.seed = meta.at("seed").get<std::uint64_t>();
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const json& j = lines[i];
    if (j.at("record") != "iteration") {
      throw std::invalid_argument("unexpected record type in iteration block");
    }
    IterationRow it;
    it.iteration = j.at("iteration").get<int>();
    it.rel_residual = j.at("rel_residual").get<double>();
    it.rel_residual_pde = j.at("rel_residual_pde").get<double>();
    it.rel_residual_ic = j.at("rel_residual_ic").get<double>();
    it.objective = j.at("objective").get<double>();
    it.increment_xnorm = j.at("increment_xnorm").get<double>();
    it.xnorm_ratio = j.at("xnorm_ratio").get<double>();
    it.alt_sweeps = j.at("alt_sweeps").get<int>();
    it.space_solves = j.at("space_solves").get<std::int64_t>();
    it.pcg_iterations = j.at("pcg_iterations").get<std::int64_t>();
    it.wall_seconds = j.at("wall_seconds").get<double>();
    r.iterations.push_back(it);
  }
  const json& sum = lines.back();
  if (sum.at("record") != "summary") {
    throw std::invalid_argument("missing summary line");
  }
  r.status = sum.at("status").get<std::string>();
  r.g_norm = sum.at("g_norm").get<double>();
  r.error_l2h1 = sum.at("error_l2h1").get<double>();
  r.error_h1hm1 = sum.at("error_h1hm1").get<double>();
  r.space_solves = sum.at("space_solves").get<std::int64_t>();
  r.pcg_iterations = sum.at("pcg_iterations").get<std::int64_t>();
  r.time_solves = sum.at("time_solves").get<std::int64_t>();
  r.total_alt_sweeps = sum.at("total_alt_sweeps").get<std::int64_t>();
  r.wall_seconds = sum.at("wall_seconds").get<double>();
  return r;
}

std::string write_json(const ComparisonRecord& r) {
  std::string out = LineWriter("comparison_meta")
                        .field("schema_version", r.schema_version)
                        .field("version", r.version)
                        .field("problem", r.problem)
                        .field("nh_exp", r.nh_exp)
                        .field("nk_exp", r.nk_exp)
                        .field("pg_refined", r.pg_refined)
                        .field("seed", r.seed)
                        .field("eps_greedy", r.eps_greedy)
                        .field("eps_alt", r.eps_alt)
                        .field("max_rank", r.max_rank)
                        .line();
  std::size_t rows = 0;
  for (const auto& ri : r.r) rows = std::max(rows, ri.size());
  for (std::size_t m = 0; m < rows; ++m) {
    LineWriter w("comparison");
    w.field("iteration", static_cast<std::int64_t>(m + 1));
    if (m < r.r[0].size()) w.field("r1", r.r[0][m]);
    if (m < r.r[1].size()) w.field("r2", r.r[1][m]);
    if (m < r.r[2].size()) w.field("r3", r.r[2][m]);
    out += w.line();
  }
  out += LineWriter("comparison_summary")
             .field("ordering_violations", r.ordering_violations)
             .line();
  return out;
}

ComparisonRecord parse_comparison_record(const std::string& text) {
  const auto lines = parse_lines(text, "comparison_meta");
  ComparisonRecord r;
  const json& meta = lines.front();
  r.schema_version = meta.at("schema_version").get<int>();
  r.version = meta.at("version").get<std::string>();
  r.problem = meta.at("problem").get<std::string>();
  r.nh_exp = meta.at("nh_exp").get<index_t>();
  r.nk_exp = meta.at("nk_exp").get<index_t>();
  r.pg_refined = meta.at("pg_refined").get<bool>();
  r.seed = meta.at("seed").get<std::uint64_t>();
  r.eps_greedy = meta.at("eps_greedy").get<double>();
  r.eps_alt = meta.at("eps_alt").get<double>();
  r.max_rank = meta.at("max_rank").get<int>();
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const json& j = lines[i];
    if (j.at("record") != "comparison") {
      throw std::invalid_argument("unexpected record type in comparison block");
    }
    if (j.contains("r1")) r.r[0].push_back(j.at("r1").get<double>());
    if (j.contains("r2")) r.r[1].push_back(j.at("r2").get<double>());
    if (j.contains("r3")) r.r[2].push_back(j.at("r3").get<double>());
  }
  const json& sum = lines.back();
  if (sum.at("record") != "comparison_summary") {
    throw std::invalid_argument("missing comparison summary line");
  }
  r.ordering_violations = sum.at("ordering_violations").get<std::vector<int>>();
  return r;
}

std::string write_json(const ConvergenceRecord& r) {
  std::string out = LineWriter("convergence_meta")
                        .field("schema_version", r.schema_version)
                        .field("version", r.version)
                        .field("problem", r.problem)
                        .field("method", r.method)
                        .field("axis", r.axis)
                        .field("fixed_level", r.fixed_level)
                        .field("ref_nh_exp", r.ref_nh_exp)
                        .field("ref_nk_exp", r.ref_nk_exp)
                        .field("pg_refined", r.pg_refined)
                        .field("seed", r.seed)
                        .line();
  for (const ConvergencePoint& p : r.points) {
    out += LineWriter("level")
               .field("level", p.level)
               .field("param", p.param)
               .field("error_l2h1", p.error_l2h1)
               .field("error_h1hm1", p.error_h1hm1)
               .field("iterations", p.iterations)
               .field("status", p.status)
               .line();
  }
  out += LineWriter("convergence_summary")
             .field("fit_points", r.fit_points)
             .field("slope_l2h1", r.slope_l2h1)
             .field("slope_h1hm1", r.slope_h1hm1)
             .line();
  return out;
}

ConvergenceRecord parse_convergence_record(const std::string& text) {
  const auto lines = parse_lines(text, "convergence_meta");
  ConvergenceRecord r;
  const json& meta = lines.front();
  r.schema_version = meta.at("schema_version").get<int>();
  r.version = meta.at("version").get<std::string>();
  r.problem = meta.at("problem").get<std::string>();
  r.method = meta.at("method").get<int>();
  r.axis = meta.at("axis").get<std::string>();
  r.fixed_level = meta.at("fixed_level").get<index_t>();
  r.ref_nh_exp = meta.at("ref_nh_exp").get<index_t>();
  r.ref_nk_exp = meta.at("ref_nk_exp").get<index_t>();
  r.pg_refined = meta.at("pg_refined").get<bool>();
  r.seed = meta.at("seed").get<std::uint64_t>();
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const json& j = lines[i];
    if (j.at("record") != "level") {
      throw std::invalid_argument("unexpected record type in level block");
    }
    ConvergencePoint p;
    p.level = j.at("level").get<index_t>();
    p.param = j.at("param").get<double>();
    p.error_l2h1 = j.at("error_l2h1").get<double>();
    p.error_h1hm1 = j.at("error_h1hm1").get<double>();
    p.iterations = j.at("iterations").get<int>();
    p.status = j.at("status").get<std::string>();
    r.points.push_back(std::move(p));
  }
  const json& sum = lines.back();
  if (sum.at("record") != "convergence_summary") {
    throw std::invalid_argument("missing convergence summary line");
  }
  r.fit_points = sum.at("fit_points").get<int>();
  r.slope_l2h1 = sum.at("slope_l2h1").get<double>();
  r.slope_h1hm1 = sum.at("slope_h1hm1").get<double>();
  return r;
}

std::string write_json(const CpuTableRecord& r) {
  return LineWriter("cputable")
      .field("schema_version", r.schema_version)
      .field("version", r.version)
      .field("problem", r.problem)
      .field("nh_exp", r.nh_exp)
      .field("nk_exp", r.nk_exp)
      .field("repetitions", r.repetitions)
      .field("base_seed", r.base_seed)
      .field("median_seconds_1", r.median_seconds[0])
      .field("median_seconds_2", r.median_seconds[1])
      .field("median_seconds_3", r.median_seconds[2])
      .field("ratio2", r.ratio2)
      .field("ratio3", r.ratio3)
      .line();
}

CpuTableRecord parse_cputable_record(const std::string& text) {
  const auto lines = parse_lines(text, "cputable");
  CpuTableRecord r;
  const json& j = lines.front();
  r.schema_version = j.at("schema_version").get<int>();
  r.version = j.at("version").get<std::string>();
  r.problem = j.at("problem").get<std::string>();
  r.nh_exp = j.at("nh_exp").get<index_t>();
  r.nk_exp = j.at("nk_exp").get<index_t>();
  r.repetitions = j.at("repetitions").get<int>();
  r.base_seed = j.at("base_seed").get<std::uint64_t>();
  r.median_seconds[0] = j.at("median_seconds_1").get<double>();
  r.median_seconds[1] = j.at("median_seconds_2").get<double>();
  r.median_seconds[2] = j.at("median_seconds_3").get<double>();
  r.ratio2 = j.at("ratio2").get<double>();
  r.ratio3 = j.at("ratio3").get<double>();
  return r;
}

std::string write_csv(const RunRecord& r) {
  std::string out =
      "iteration,rel_residual,rel_residual_pde,rel_residual_ic,objective,"
      "increment_xnorm,xnorm_ratio,alt_sweeps,space_solves,pcg_iterations,"
      "wall_seconds\n";
  for (const IterationRow& it : r.iterations) {
    out += std::to_string(it.iteration) + ',' + format_double(it.rel_residual) +
           ',' + format_double(it.rel_residual_pde) + ',' +
           format_double(it.rel_residual_ic) + ',' + format_double(it.objective) +
           ',' + format_double(it.increment_xnorm) + ',' +
           format_double(it.xnorm_ratio) + ',' + std::to_string(it.alt_sweeps) +
           ',' + std::to_string(it.space_solves) + ',' +
           std::to_string(it.pcg_iterations) + ',' +
           format_double(it.wall_seconds) + '\n';
  }
  return out;
}

std::string write_csv(const ComparisonRecord& r) {
  std::string out = "iteration,r1,r2,r3\n";
  std::size_t rows = 0;
  for (const auto& ri : r.r) rows = std::max(rows, ri.size());
  for (std::size_t m = 0; m < rows; ++m) {
    out += std::to_string(m + 1);
    for (int i = 0; i < 3; ++i) {
      out += ',';
      if (m < r.r[static_cast<std::size_t>(i)].size()) {
        out += format_double(r.r[static_cast<std::size_t>(i)][m]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string write_csv(const ConvergenceRecord& r) {
  std::string out = "axis,level,param,error_l2h1,error_h1hm1,iterations,status\n";
  for (const ConvergencePoint& p : r.points) {
    out += r.axis + ',' + std::to_string(p.level) + ',' + format_double(p.param) +
           ',' + format_double(p.error_l2h1) + ',' + format_double(p.error_h1hm1) +
           ',' + std::to_string(p.iterations) + ',' + p.status + '\n';
  }
  return out;
}

std::string write_csv(const CpuTableRecord& r) {
  std::string out = "method,median_seconds,ratio\n";
  out += "1," + format_double(r.median_seconds[0]) + ",1\n";
  out += "2," + format_double(r.median_seconds[1]) + ',' + format_double(r.ratio2) +
         '\n';
  out += "3," + format_double(r.median_seconds[2]) + ',' + format_double(r.ratio3) +
         '\n';
  return out;
}

}  // namespace parasol
