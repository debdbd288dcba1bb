#include "parasol/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "parasol/space_fem.hpp"
#include "parasol/time_fem.hpp"

namespace parasol {

namespace {

double l2h1_sq(const SeparatedVector& x, const ReferenceFrame& f) {
  return gram_norm_sq(x, SpaceWeight::matrix(f.stiffness.get()),
                      TimeWeight::matrix(&f.time_mass));
}

double h1hm1_sq(const SeparatedVector& x, const ReferenceFrame& f) {
  return gram_norm_sq(x, SpaceWeight::factor(&f.dual_weight),
                      TimeWeight::matrix(&f.time_stiffness));
}

void finish_frame(ReferenceFrame& f) {
  f.ref_l2h1 = std::sqrt(l2h1_sq(f.reference, f));
  f.ref_h1hm1 = std::sqrt(h1hm1_sq(f.reference, f));
  if (!(f.ref_l2h1 > 0.0) || !(f.ref_h1hm1 > 0.0)) {
    throw std::runtime_error("reference solution has zero norm");
  }
}

ReferenceFrame make_frame_matrices(index_t space_level, index_t time_level) {
  ReferenceFrame f;
  f.space_level = space_level;
  f.time_level = time_level;
  const QuadMesh mesh(static_cast<index_t>(1) << space_level);
  const TimeGrid grid(static_cast<index_t>(1) << time_level);
  f.mass = std::make_shared<SparseMatrix>(assemble_mass(mesh));
  auto stiffness = std::make_shared<SparseMatrix>(assemble_stiffness(mesh));
  f.stiffness = stiffness;
  f.stiffness_solver = std::make_shared<SpdFactorization>(*stiffness);
  const TimeMatrices tm = assemble_p1_matrices(grid);
  f.time_mass = tm.mass;
  f.time_stiffness = tm.stiffness;
  f.dual_weight.left = f.mass;
  f.dual_weight.middle = f.stiffness_solver;
  f.dual_weight.right = f.mass;
  f.dual_weight.dim = f.mass->rows();
  return f;
}

}  // namespace

ReferenceFrame make_exact_frame(const Problem& p, index_t space_level,
                                index_t time_level) {
  if (!p.exact.has_value()) {
    throw std::invalid_argument("problem has no closed-form solution");
  }
  ReferenceFrame f = make_frame_matrices(space_level, time_level);
  const QuadMesh mesh(static_cast<index_t>(1) << space_level);
  const TimeGrid grid(static_cast<index_t>(1) << time_level);
  f.reference = SeparatedVector(mesh.interior_nodes(), grid.nodes());
  std::vector<double> tvals(static_cast<std::size_t>(grid.nodes()));
  for (const auto& term : p.exact->terms) {
    const std::vector<double> svals = nodal_interpolant(mesh, term.w);
    for (index_t l = 0; l < grid.nodes(); ++l) {
      tvals[static_cast<std::size_t>(l)] = term.sigma(grid.node(l));
    }
    f.reference.append(svals, tvals);
  }
  finish_frame(f);
  return f;
}

ReferenceFrame make_computed_frame(index_t space_level, index_t time_level,
                                   const SeparatedVector& u) {
  ReferenceFrame f = make_frame_matrices(space_level, time_level);
  const index_t nh = f.mass->rows();
  const index_t nk = f.time_mass.dim();
  if (u.n_space() != nh || u.n_time() != nk) {
    throw std::invalid_argument("reference solution does not match frame grids");
  }
  f.reference = u;
  finish_frame(f);
  return f;
}

SeparatedVector lift_to_frame(const SeparatedVector& u, index_t space_level,
                              index_t time_level, const ReferenceFrame& frame) {
  if (space_level > frame.space_level || time_level > frame.time_level) {
    throw std::invalid_argument("iterate levels exceed the reference frame");
  }
  const index_t nh = frame.mass->rows();
  const index_t nk = frame.time_stiffness.dim();
  SeparatedVector out(nh, nk);
  for (index_t j = 0; j < u.rank(); ++j) {
    std::vector<double> a(u.space_col(j).begin(), u.space_col(j).end());
    for (index_t l = space_level; l < frame.space_level; ++l) {
      a = prolong_space(QuadMesh(static_cast<index_t>(1) << l), a);
    }
    std::vector<double> b(u.time_col(j).begin(), u.time_col(j).end());
    for (index_t k = time_level; k < frame.time_level; ++k) {
      b = prolong_time(TimeGrid(static_cast<index_t>(1) << k), b);
    }
    out.append(a, b);
  }
  return out;
}

namespace {

double relative_error(const SeparatedVector& u, index_t space_level,
                      index_t time_level, const ReferenceFrame& frame,
                      double (*norm_sq)(const SeparatedVector&, const ReferenceFrame&),
                      double ref_norm) {
  SeparatedVector diff = lift_to_frame(u, space_level, time_level, frame);
  diff.append_all_scaled(-1.0, frame.reference);
  const double sq = norm_sq(diff, frame);
  const double abs = sq > 0.0 ? std::sqrt(sq) : 0.0;
  return abs / ref_norm;
}

}  // namespace

double error_l2h1(const SeparatedVector& u, index_t space_level,
                  index_t time_level, const ReferenceFrame& frame) {
  return relative_error(u, space_level, time_level, frame, &l2h1_sq,
                        frame.ref_l2h1);
}

double error_h1hm1(const SeparatedVector& u, index_t space_level,
                   index_t time_level, const ReferenceFrame& frame) {
  return relative_error(u, space_level, time_level, frame, &h1hm1_sq,
                        frame.ref_h1hm1);
}

double fit_convergence_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("slope fit requires at least 3 points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [param, err] : points) {
    if (!(param > 0.0) || !(err > 0.0)) {
      throw std::invalid_argument("slope fit requires positive values");
    }
    mx += std::log(param);
    my += std::log(err);
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [param, err] : points) {
    const double dx = std::log(param) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("slope fit abscissae are degenerate");
  }
  return sxy / sxx;
}

}  // namespace parasol
