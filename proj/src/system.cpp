#include "parasol/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "parasol/kernels.hpp"

namespace parasol {

namespace {

SpaceFactor make_factor(std::shared_ptr<const SparseMatrix> left,
                        std::shared_ptr<const SpdFactorization> middle,
                        std::shared_ptr<const SparseMatrix> right, index_t dim) {
  SpaceFactor f;
  f.left = std::move(left);
  f.middle = std::move(middle);
  f.right = std::move(right);
  f.dim = dim;
  return f;
}

/// Time-side blocks of the normal equations. For the riesz and euclidean
/// methods these are the piecewise-affine trial matrices; the fully discrete
/// petrov_galerkin method replaces them by products through the
/// piecewise-constant test space.
struct TimeBlocks {
  TriDiagMatrix first;                             // pairs with M D^-1 M
  std::vector<TriDiagMatrix> cross;                // [p], pairs with A_p^T D^-1 M
  std::vector<std::vector<TriDiagMatrix>> second;  // [p][p']
  std::vector<std::vector<double>> source_first;   // [q]
  std::vector<std::vector<std::vector<double>>> source_cross;  // [p][q]
};

TimeBlocks p1_blocks(const TimeDiscretization& td) {
  TimeBlocks tb;
  tb.first = td.base.stiffness;
  tb.cross = td.weighted_derivative;
  tb.second = td.weighted_mass;
  tb.source_first = td.derivative_moments;
  tb.source_cross = td.weighted_moments;
  return tb;
}

TimeBlocks pg_blocks(const Problem& p, const TimeDiscretization& td, bool refined) {
  const TimeGrid& grid = td.grid;
  const std::size_t num_p = p.num_operators();
  const std::size_t num_q = p.num_sources();
  const std::vector<double> test_mass = pg_test_mass(grid, refined);
  const PgBlock deriv = assemble_pg_derivative(grid, refined);
  std::vector<PgBlock> weighted(num_p);
  for (std::size_t ip = 0; ip < num_p; ++ip) {
    weighted[ip] = assemble_pg_weighted_mass(
        grid, make_time_fn(p.config.operators[ip].mu), refined);
  }
  std::vector<std::vector<double>> source(num_q);
  for (std::size_t q = 0; q < num_q; ++q) {
    source[q] = assemble_pg_source_moments(
        grid, make_time_fn(p.config.sources[q].lambda), refined);
  }

  TimeBlocks tb;
  tb.first = pg_normal_product(deriv, test_mass, deriv);
  tb.cross.resize(num_p);
  tb.second.resize(num_p);
  tb.source_cross.resize(num_p);
  for (std::size_t ip = 0; ip < num_p; ++ip) {
    tb.cross[ip] = pg_normal_product(weighted[ip], test_mass, deriv);
    tb.second[ip].resize(num_p);
    for (std::size_t jp = 0; jp < num_p; ++jp) {
      tb.second[ip][jp] = pg_normal_product(weighted[ip], test_mass, weighted[jp]);
    }
    tb.source_cross[ip].resize(num_q);
    for (std::size_t q = 0; q < num_q; ++q) {
      tb.source_cross[ip][q] = pg_normal_vector(weighted[ip], test_mass, source[q]);
    }
  }
  tb.source_first.resize(num_q);
  for (std::size_t q = 0; q < num_q; ++q) {
    tb.source_first[q] = pg_normal_vector(deriv, test_mass, source[q]);
  }
  return tb;
}

/// Term coefficients c_r = w_r s^T T_r s at a fixed time factor, with the
/// preconditioner data. Paired terms copy the earlier coefficient so that the
/// reduced space operator stays exactly symmetric.
ReducedSpaceProblem reduce_coefficients(const MinResSystem& sys,
                                        std::span<const double> s) {
  const auto& terms = sys.op.terms();
  ReducedSpaceProblem red;
  red.coeff.resize(terms.size());
  std::vector<double> ts(static_cast<std::size_t>(sys.n_time));
  for (std::size_t r = 0; r < terms.size(); ++r) {
    if (terms[r].pair_of >= 0) {
      red.coeff[r] = red.coeff[static_cast<std::size_t>(terms[r].pair_of)];
      continue;
    }
    terms[r].time.apply(s, ts);
    red.coeff[r] = terms[r].weight * simd::dot(s, ts);
  }
  for (std::size_t r = 0; r < terms.size(); ++r) {
    if (terms[r].gamma_block) red.gamma += red.coeff[r];
  }
  if (!sys.term_diagonals.empty()) {
    red.jacobi.assign(static_cast<std::size_t>(sys.n_space), 0.0);
    for (std::size_t r = 0; r < terms.size(); ++r) {
      simd::axpy(red.coeff[r], sys.term_diagonals[r], red.jacobi);
    }
  }
  return red;
}

/// Reduced time matrix sum_r (w_r v^T S_r v) T_r at a fixed space factor.
TriDiagMatrix reduced_time_matrix(const MinResSystem& sys,
                                  std::span<const double> v,
                                  SpaceFactor::Workspace& ws) {
  const auto& terms = sys.op.terms();
  std::vector<double> q(terms.size());
  for (std::size_t r = 0; r < terms.size(); ++r) {
    q[r] = terms[r].pair_of >= 0 ? q[static_cast<std::size_t>(terms[r].pair_of)]
                                 : terms[r].space.quad_form(v, ws);
  }
  TriDiagMatrix m = TriDiagMatrix::zero(sys.n_time);
  for (std::size_t r = 0; r < terms.size(); ++r) {
    m.add_scaled(terms[r].weight * q[r], terms[r].time);
  }
  return m;
}

}  // namespace

Method method_from_int(int m) {
  switch (m) {
    case 1:
      return Method::riesz;
    case 2:
      return Method::petrov_galerkin;
    case 3:
      return Method::euclidean;
    default:
      throw std::invalid_argument("method must be 1, 2, or 3");
  }
}

MinResSystem assemble_system(const Problem& p, const SpaceDiscretization& sd,
                             const TimeDiscretization& td, Method method,
                             bool pg_refined) {
  const index_t nh = sd.mass->rows();
  const index_t nk = td.grid.nodes();
  const index_t num_p = static_cast<index_t>(p.num_operators());
  const index_t num_q = static_cast<index_t>(p.num_sources());
  const double alpha = p.alpha();
  const bool euclid = method == Method::euclidean;

  const TimeBlocks tb = method == Method::petrov_galerkin
                            ? pg_blocks(p, td, pg_refined)
                            : p1_blocks(td);
  const std::shared_ptr<const SpdFactorization> mid =
      euclid ? nullptr : sd.stiffness_solver;
  // A_p^T D^-1 collapses to the identity when A_p is the stiffness matrix
  // itself (pure unit diffusion); only valid while the D^-1 factor exists.
  const auto collapses = [&](index_t ip) {
    return !euclid && sd.operators[static_cast<std::size_t>(ip)] == sd.stiffness;
  };
  const auto op_matrix = [&](index_t ip) {
    return sd.operators[static_cast<std::size_t>(ip)];
  };

  std::vector<KronTerm> terms;
  terms.reserve(static_cast<std::size_t>(2 + 2 * num_p + num_p * num_p));

  {
    KronTerm t;
    t.space = make_factor(sd.mass, mid, sd.mass, nh);
    t.time = tb.first;
    terms.push_back(std::move(t));
  }
  for (index_t ip = 0; ip < num_p; ++ip) {
    KronTerm a;
    a.space = collapses(ip) ? make_factor(nullptr, nullptr, sd.mass, nh)
                            : make_factor(op_matrix(ip), mid, sd.mass, nh);
    a.time = tb.cross[static_cast<std::size_t>(ip)];
    const int a_index = static_cast<int>(terms.size());
    terms.push_back(std::move(a));

    KronTerm b;
    b.space = collapses(ip) ? make_factor(nullptr, nullptr, sd.mass, nh)
                            : make_factor(sd.mass, mid, op_matrix(ip), nh);
    b.time = tb.cross[static_cast<std::size_t>(ip)].transposed();
    b.pair_of = a_index;
    terms.push_back(std::move(b));
  }
  for (index_t ip = 0; ip < num_p; ++ip) {
    for (index_t jp = 0; jp < num_p; ++jp) {
      KronTerm t;
      if (collapses(ip) && collapses(jp)) {
        t.space = make_factor(nullptr, nullptr, sd.stiffness, nh);
      } else if (collapses(ip)) {
        t.space = make_factor(nullptr, nullptr, op_matrix(jp), nh);
      } else if (collapses(jp)) {
        t.space = make_factor(op_matrix(ip), nullptr, nullptr, nh);
      } else {
        t.space = make_factor(op_matrix(ip), mid, op_matrix(jp), nh);
      }
      t.time = tb.second[static_cast<std::size_t>(ip)][static_cast<std::size_t>(jp)];
      t.gamma_block = ip == jp;
      if (jp < ip) t.pair_of = static_cast<int>(1 + 2 * num_p + jp * num_p + ip);
      terms.push_back(std::move(t));
    }
  }
  {
    KronTerm t;
    t.space = make_factor(nullptr, nullptr, sd.mass, nh);
    t.time = td.base.initial_outer;
    t.weight = alpha;
    t.initial_block = true;
    terms.push_back(std::move(t));
  }

  MinResSystem sys;
  sys.method = method;
  sys.n_space = nh;
  sys.n_time = nk;
  sys.op = KroneckerSumOperator(nh, nk, std::move(terms));
  sys.stiffness_solver = mid;

  if (euclid) {
    for (const KronTerm& t : sys.op.terms()) {
      sys.term_diagonals.push_back(t.space.diagonal());
    }
  }

  sys.rhs = SeparatedVector(nh, nk);
  std::vector<double> tmp(static_cast<std::size_t>(nh));
  std::vector<double> col(static_cast<std::size_t>(nh));
  for (index_t q = 0; q < num_q; ++q) {
    const auto& load = sd.loads[static_cast<std::size_t>(q)];
    if (euclid) {
      sd.mass->apply(load, col);
    } else {
      sd.stiffness_solver->solve(load, tmp);
      sd.mass->apply(tmp, col);
    }
    sys.rhs.append(col, tb.source_first[static_cast<std::size_t>(q)]);
    sys.rhs_initial.push_back(false);
  }
  for (index_t ip = 0; ip < num_p; ++ip) {
    for (index_t q = 0; q < num_q; ++q) {
      const auto& load = sd.loads[static_cast<std::size_t>(q)];
      if (collapses(ip)) {
        std::copy(load.begin(), load.end(), col.begin());
      } else if (euclid) {
        op_matrix(ip)->apply_transposed(load, col);
      } else {
        sd.stiffness_solver->solve(load, tmp);
        op_matrix(ip)->apply_transposed(tmp, col);
      }
      sys.rhs.append(col,
                     tb.source_cross[static_cast<std::size_t>(ip)][static_cast<std::size_t>(q)]);
      sys.rhs_initial.push_back(false);
    }
  }
  sys.rhs.append_scaled(alpha, sd.initial_moments, initial_unit(td.grid));
  sys.rhs_initial.push_back(true);

  sys.norms.space_mass = sd.mass;
  sys.norms.space_stiffness = sd.stiffness;
  sys.norms.stiffness_solver = mid;
  sys.norms.time_mass = td.base.mass;
  sys.norms.time_stiffness = td.base.stiffness;
  sys.norms.terminal = terminal_outer(td.grid);
  sys.norms.dual_weight = make_factor(sd.mass, mid, sd.mass, nh);
  sys.norms.alpha = alpha;
  sys.norms.bound_m = p.bound_m();
  return sys;
}

double xnorm_sq(const SeparatedVector& x, const NormOperators& norms) {
  const double l2h1 =
      gram_norm_sq(x, SpaceWeight::matrix(norms.space_stiffness.get()),
                   TimeWeight::matrix(&norms.time_mass));
  const double dual = gram_norm_sq(x, SpaceWeight::factor(&norms.dual_weight),
                                   TimeWeight::matrix(&norms.time_stiffness));
  const double terminal = gram_norm_sq(x, SpaceWeight::matrix(norms.space_mass.get()),
                                       TimeWeight::matrix(&norms.terminal));
  return l2h1 + dual / (norms.bound_m * norms.bound_m) + terminal / norms.alpha;
}

LinearMap make_space_map(const MinResSystem& sys, std::vector<double> coeff) {
  struct Group {
    const SpaceFactor* factor;
    double coeff;
  };
  struct State {
    std::vector<Group> groups;
    SpaceFactor::Workspace ws;
    std::vector<double> buf;
  };
  auto state = std::make_shared<State>();
  const auto& terms = sys.op.terms();
  if (coeff.size() != terms.size()) {
    throw std::invalid_argument("space map: coefficient count mismatch");
  }
  // Terms sharing the same factor triple (e.g. the collapsed cross and
  // initial blocks) are merged into a single application.
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const SpaceFactor& f = terms[r].space;
    bool merged = false;
    for (Group& g : state->groups) {
      if (g.factor->left == f.left && g.factor->middle == f.middle &&
          g.factor->right == f.right) {
        g.coeff += coeff[r];
        merged = true;
        break;
      }
    }
    if (!merged) state->groups.push_back(Group{&f, coeff[r]});
  }
  state->buf.resize(static_cast<std::size_t>(sys.n_space));
  return [state](std::span<const double> x, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (const Group& g : state->groups) {
      if (g.coeff == 0.0) continue;
      g.factor->apply(x, state->buf, state->ws);
      simd::axpy(g.coeff, state->buf, y);
    }
  };
}

LinearMap make_space_preconditioner(const MinResSystem& sys,
                                    const ReducedSpaceProblem& red) {
  if (sys.method == Method::euclidean) {
    auto diag = std::make_shared<std::vector<double>>(red.jacobi);
    for (double d : *diag) {
      if (!(d > 0.0)) {
        throw std::runtime_error("jacobi preconditioner: nonpositive diagonal");
      }
    }
    return [diag](std::span<const double> r, std::span<double> z) {
      for (std::size_t i = 0; i < r.size(); ++i) z[i] = r[i] / (*diag)[i];
    };
  }
  if (!(red.gamma > 0.0)) {
    throw std::runtime_error("stiffness preconditioner: nonpositive scale");
  }
  const double inv_gamma = 1.0 / red.gamma;
  auto solver = sys.stiffness_solver;
  return [inv_gamma, solver](std::span<const double> r, std::span<double> z) {
    solver->solve(r, z);
    simd::scal(inv_gamma, z);
  };
}

ResidualTracker::ResidualTracker(const MinResSystem& sys)
    : sys_(&sys), u_(sys.n_space, sys.n_time) {
  std::vector<double> neg(static_cast<std::size_t>(sys.n_space));
  for (index_t j = 0; j < sys.rhs.rank(); ++j) {
    const auto sc = sys.rhs.space_col(j);
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -sc[i];
    push_column(neg, sys.rhs.time_col(j), sys.rhs_initial[static_cast<std::size_t>(j)],
                true);
  }
  double total = 0.0;
  double diag = 0.0;
  for (index_t c = 0; c < cols_; ++c) {
    diag += gram_[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    for (index_t d = 0; d <= c; ++d) {
      const double v = gram_[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
      total += d == c ? v : 2.0 * v;
    }
  }
  gnorm_ = clamped_sqrt(total, diag);
}

std::span<const double> ResidualTracker::space_col(index_t c) const {
  const std::size_t ns = static_cast<std::size_t>(sys_->n_space);
  return {space_store_.data() + ns * static_cast<std::size_t>(c), ns};
}

std::span<const double> ResidualTracker::time_col(index_t c) const {
  const std::size_t nt = static_cast<std::size_t>(sys_->n_time);
  return {time_store_.data() + nt * static_cast<std::size_t>(c), nt};
}

void ResidualTracker::push_column(std::span<const double> a, std::span<const double> b,
                                  bool ic, bool is_rhs) {
  space_store_.insert(space_store_.end(), a.begin(), a.end());
  time_store_.insert(time_store_.end(), b.begin(), b.end());
  ic_.push_back(ic);
  is_rhs_.push_back(is_rhs);
  const index_t c = cols_;
  const auto ac = space_col(c);
  const auto bc = time_col(c);
  gram_.emplace_back(static_cast<std::size_t>(c) + 1);
  for (index_t d = 0; d <= c; ++d) {
    const double gs = simd::dot(ac, space_col(d));
    gram_[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] =
        gs == 0.0 ? 0.0 : gs * simd::dot(bc, time_col(d));
  }
  double x = 0.0;
  for (index_t n = 0; n < u_.rank(); ++n) {
    const double ds = simd::dot(ac, u_.space_col(n));
    if (ds != 0.0) x += ds * simd::dot(bc, u_.time_col(n));
  }
  cross_.push_back(x);
  ++cols_;
}

void ResidualTracker::append(std::span<const double> v, std::span<const double> s) {
  for (index_t c = 0; c < cols_; ++c) {
    const double ds = simd::dot(space_col(c), v);
    if (ds != 0.0) cross_[static_cast<std::size_t>(c)] += ds * simd::dot(time_col(c), s);
  }
  u_.append(v, s);
  ++m_;
  std::vector<double> a(static_cast<std::size_t>(sys_->n_space));
  std::vector<double> b(static_cast<std::size_t>(sys_->n_time));
  for (const KronTerm& term : sys_->op.terms()) {
    term.space.apply(v, a, ws_);
    simd::scal(term.weight, a);
    term.time.apply(s, b);
    push_column(a, b, term.initial_block, false);
  }
}

namespace {

/// Symmetric double sum of the tracked Gram table over a column subset.
template <typename Pred>
std::pair<double, double> bucket_sum(const std::vector<std::vector<double>>& gram,
                                     index_t cols, Pred keep) {
  double total = 0.0;
  double diag = 0.0;
  for (index_t c = 0; c < cols; ++c) {
    if (!keep(c)) continue;
    diag += gram[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    for (index_t d = 0; d <= c; ++d) {
      if (!keep(d)) continue;
      const double v = gram[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
      total += d == c ? v : 2.0 * v;
    }
  }
  return {total, diag};
}

}  // namespace

double ResidualTracker::abs_residual() const {
  const auto [total, diag] = bucket_sum(gram_, cols_, [](index_t) { return true; });
  return clamped_sqrt(total, diag);
}

double ResidualTracker::rel_residual() const {
  const double abs = abs_residual();
  return gnorm_ == 0.0 ? abs : abs / gnorm_;
}

double ResidualTracker::rel_residual_pde() const {
  const auto [total, diag] = bucket_sum(
      gram_, cols_, [&](index_t c) { return !ic_[static_cast<std::size_t>(c)]; });
  const double abs = clamped_sqrt(total, diag);
  return gnorm_ == 0.0 ? abs : abs / gnorm_;
}

double ResidualTracker::rel_residual_ic() const {
  const auto [total, diag] = bucket_sum(
      gram_, cols_, [&](index_t c) { return ic_[static_cast<std::size_t>(c)]; });
  const double abs = clamped_sqrt(total, diag);
  return gnorm_ == 0.0 ? abs : abs / gnorm_;
}

double ResidualTracker::objective() const {
  double obj = 0.0;
  for (index_t c = 0; c < cols_; ++c) {
    const std::size_t ci = static_cast<std::size_t>(c);
    obj += (is_rhs_[ci] ? 1.0 : 0.5) * cross_[ci];
  }
  return obj;
}

double ResidualTracker::candidate_objective(std::span<const double> v,
                                            std::span<const double> s) const {
  double val = objective();
  // Linear part: w^T (B u - g) over the stored columns.
  for (index_t c = 0; c < cols_; ++c) {
    const double ds = simd::dot(space_col(c), v);
    if (ds != 0.0) val += ds * simd::dot(time_col(c), s);
  }
  // Quadratic part: 1/2 w^T B w through the term quadratic forms.
  const auto& terms = sys_->op.terms();
  std::vector<double> q(terms.size());
  std::vector<double> tq(terms.size());
  std::vector<double> ts(static_cast<std::size_t>(sys_->n_time));
  for (std::size_t r = 0; r < terms.size(); ++r) {
    if (terms[r].pair_of >= 0) {
      const std::size_t pr = static_cast<std::size_t>(terms[r].pair_of);
      q[r] = q[pr];
      tq[r] = tq[pr];
      continue;
    }
    q[r] = terms[r].space.quad_form(v, ws_);
    terms[r].time.apply(s, ts);
    tq[r] = simd::dot(s, ts);
  }
  for (std::size_t r = 0; r < terms.size(); ++r) {
    val += 0.5 * terms[r].weight * q[r] * tq[r];
  }
  return val;
}

std::vector<double> ResidualTracker::contract_space(std::span<const double> s) const {
  std::vector<double> rhs(static_cast<std::size_t>(sys_->n_space), 0.0);
  for (index_t c = 0; c < cols_; ++c) {
    const double w = simd::dot(time_col(c), s);
    if (w != 0.0) simd::axpy(-w, space_col(c), rhs);
  }
  return rhs;
}

std::vector<double> ResidualTracker::contract_time(std::span<const double> v) const {
  std::vector<double> rhs(static_cast<std::size_t>(sys_->n_time), 0.0);
  for (index_t c = 0; c < cols_; ++c) {
    const double w = simd::dot(space_col(c), v);
    if (w != 0.0) simd::axpy(-w, time_col(c), rhs);
  }
  return rhs;
}

ReducedSpaceProblem reduce_to_space(const MinResSystem& sys,
                                    const SeparatedVector& u_prev,
                                    std::span<const double> s) {
  ReducedSpaceProblem red = reduce_coefficients(sys, s);
  red.rhs.assign(static_cast<std::size_t>(sys.n_space), 0.0);
  for (index_t j = 0; j < sys.rhs.rank(); ++j) {
    const double c = simd::dot(sys.rhs.time_col(j), s);
    if (c != 0.0) simd::axpy(c, sys.rhs.space_col(j), red.rhs);
  }
  const auto& terms = sys.op.terms();
  SpaceFactor::Workspace ws;
  std::vector<double> ts(static_cast<std::size_t>(sys.n_time));
  std::vector<double> sv(static_cast<std::size_t>(sys.n_space));
  for (const KronTerm& term : terms) {
    for (index_t n = 0; n < u_prev.rank(); ++n) {
      term.time.apply(u_prev.time_col(n), ts);
      const double c = term.weight * simd::dot(s, ts);
      if (c == 0.0) continue;
      term.space.apply(u_prev.space_col(n), sv, ws);
      simd::axpy(-c, sv, red.rhs);
    }
  }
  return red;
}

ReducedTimeProblem reduce_to_time(const MinResSystem& sys,
                                  const SeparatedVector& u_prev,
                                  std::span<const double> v) {
  SpaceFactor::Workspace ws;
  ReducedTimeProblem red;
  red.matrix = reduced_time_matrix(sys, v, ws);
  red.rhs.assign(static_cast<std::size_t>(sys.n_time), 0.0);
  for (index_t j = 0; j < sys.rhs.rank(); ++j) {
    const double c = simd::dot(sys.rhs.space_col(j), v);
    if (c != 0.0) simd::axpy(c, sys.rhs.time_col(j), red.rhs);
  }
  const auto& terms = sys.op.terms();
  std::vector<double> sv(static_cast<std::size_t>(sys.n_space));
  std::vector<double> ts(static_cast<std::size_t>(sys.n_time));
  for (const KronTerm& term : terms) {
    for (index_t n = 0; n < u_prev.rank(); ++n) {
      term.space.apply(u_prev.space_col(n), sv, ws);
      const double c = term.weight * simd::dot(v, sv);
      if (c == 0.0) continue;
      term.time.apply(u_prev.time_col(n), ts);
      simd::axpy(-c, ts, red.rhs);
    }
  }
  return red;
}

ReducedSpaceProblem reduce_to_space(const ResidualTracker& tracker,
                                    std::span<const double> s) {
  ReducedSpaceProblem red = reduce_coefficients(tracker.system(), s);
  red.rhs = tracker.contract_space(s);
  return red;
}

ReducedTimeProblem reduce_to_time(const ResidualTracker& tracker,
                                  std::span<const double> v) {
  SpaceFactor::Workspace ws;
  ReducedTimeProblem red;
  red.matrix = reduced_time_matrix(tracker.system(), v, ws);
  red.rhs = tracker.contract_time(v);
  return red;
}

ResidualSplit residual_l2(const MinResSystem& sys, const SeparatedVector& u) {
  ResidualTracker tracker(sys);
  for (index_t j = 0; j < u.rank(); ++j) {
    tracker.append(u.space_col(j), u.time_col(j));
  }
  ResidualSplit split;
  split.total = tracker.rel_residual();
  split.pde = tracker.rel_residual_pde();
  split.ic = tracker.rel_residual_ic();
  return split;
}

}  // namespace parasol
