#include "parasol/space_fem.hpp"

#include <stdexcept>

#include "parasol/quadrature.hpp"

namespace parasol {

namespace {

// Local corner order: SW, SE, NE, NW (counterclockwise).
constexpr int kCornerDx[4] = {0, 1, 1, 0};
constexpr int kCornerDy[4] = {0, 0, 1, 1};

// Q1 element mass matrix divided by h^2.
constexpr double kMassLocal[4][4] = {
    {4.0 / 36, 2.0 / 36, 1.0 / 36, 2.0 / 36},
    {2.0 / 36, 4.0 / 36, 2.0 / 36, 1.0 / 36},
    {1.0 / 36, 2.0 / 36, 4.0 / 36, 2.0 / 36},
    {2.0 / 36, 1.0 / 36, 2.0 / 36, 4.0 / 36},
};

// Q1 element stiffness matrix (h-independent).
constexpr double kStiffLocal[4][4] = {
    {4.0 / 6, -1.0 / 6, -2.0 / 6, -1.0 / 6},
    {-1.0 / 6, 4.0 / 6, -1.0 / 6, -2.0 / 6},
    {-2.0 / 6, -1.0 / 6, 4.0 / 6, -1.0 / 6},
    {-1.0 / 6, -2.0 / 6, -1.0 / 6, 4.0 / 6},
};

double shape(int a, double xi, double eta) {
  switch (a) {
    case 0: return (1.0 - xi) * (1.0 - eta);
    case 1: return xi * (1.0 - eta);
    case 2: return xi * eta;
    default: return (1.0 - xi) * eta;
  }
}

// Gradient in reference coordinates.
std::array<double, 2> shape_grad(int a, double xi, double eta) {
  switch (a) {
    case 0: return {-(1.0 - eta), -(1.0 - xi)};
    case 1: return {1.0 - eta, -xi};
    case 2: return {eta, xi};
    default: return {-eta, 1.0 - xi};
  }
}

template <typename LocalFn>
SparseMatrix assemble_cellwise(const QuadMesh& mesh, const LocalFn& local) {
  const index_t n = mesh.cells_per_side;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(n) * n * 16);
  double loc[4][4];
  for (index_t cy = 0; cy < n; ++cy) {
    for (index_t cx = 0; cx < n; ++cx) {
      local(cx, cy, loc);
      for (int a = 0; a < 4; ++a) {
        const index_t ia = cx + kCornerDx[a];
        const index_t ja = cy + kCornerDy[a];
        if (!mesh.is_interior(ia, ja)) continue;
        for (int b = 0; b < 4; ++b) {
          const index_t ib = cx + kCornerDx[b];
          const index_t jb = cy + kCornerDy[b];
          if (!mesh.is_interior(ib, jb)) continue;
          trips.push_back({mesh.index(ia, ja), mesh.index(ib, jb), loc[a][b]});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(mesh.interior_nodes(), mesh.interior_nodes(),
                                     std::move(trips));
}

}  // namespace

QuadMesh::QuadMesh(index_t cells) : cells_per_side(cells) {
  if (cells < 2) {
    throw std::invalid_argument("mesh needs at least 2 cells per side");
  }
}

SparseMatrix assemble_mass(const QuadMesh& mesh) {
  const double h2 = mesh.h() * mesh.h();
  return assemble_cellwise(mesh, [&](index_t, index_t, double (&loc)[4][4]) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) loc[a][b] = h2 * kMassLocal[a][b];
    }
  });
}

SparseMatrix assemble_stiffness(const QuadMesh& mesh) {
  return assemble_cellwise(mesh, [&](index_t, index_t, double (&loc)[4][4]) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) loc[a][b] = kStiffLocal[a][b];
    }
  });
}

SparseMatrix assemble_advection(const QuadMesh& mesh, const VelocityField& c) {
  const GaussRule5& q = gauss5();
  const double h = mesh.h();
  return assemble_cellwise(mesh, [&](index_t cx, index_t cy, double (&loc)[4][4]) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) loc[a][b] = 0.0;
    }
    for (int gx = 0; gx < 5; ++gx) {
      for (int gy = 0; gy < 5; ++gy) {
        const double xi = q.node[gx];
        const double eta = q.node[gy];
        const double w = q.weight[gx] * q.weight[gy];
        const auto vel = c((cx + xi) * h, (cy + eta) * h);
        double conv[4];
        double val[4];
        for (int a = 0; a < 4; ++a) {
          const auto g = shape_grad(a, xi, eta);
          // Physical gradient carries 1/h; with the h^2 cell area this leaves
          // a single factor h overall.
          conv[a] = vel[0] * g[0] + vel[1] * g[1];
          val[a] = shape(a, xi, eta);
        }
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            loc[a][b] += h * w * conv[b] * val[a];
          }
        }
      }
    }
  });
}

std::vector<double> assemble_load(const QuadMesh& mesh, const ScalarField& f) {
  const GaussRule5& q = gauss5();
  const index_t n = mesh.cells_per_side;
  const double h = mesh.h();
  const double h2 = h * h;
  std::vector<double> load(static_cast<std::size_t>(mesh.interior_nodes()), 0.0);
  for (index_t cy = 0; cy < n; ++cy) {
    for (index_t cx = 0; cx < n; ++cx) {
      double loc[4] = {0.0, 0.0, 0.0, 0.0};
      for (int gx = 0; gx < 5; ++gx) {
        for (int gy = 0; gy < 5; ++gy) {
          const double xi = q.node[gx];
          const double eta = q.node[gy];
          const double w = q.weight[gx] * q.weight[gy];
          const double fv = f((cx + xi) * h, (cy + eta) * h);
          for (int a = 0; a < 4; ++a) loc[a] += w * fv * shape(a, xi, eta);
        }
      }
      for (int a = 0; a < 4; ++a) {
        const index_t ia = cx + kCornerDx[a];
        const index_t ja = cy + kCornerDy[a];
        if (mesh.is_interior(ia, ja)) load[mesh.index(ia, ja)] += h2 * loc[a];
      }
    }
  }
  return load;
}

std::vector<double> project_initial(const QuadMesh& mesh, const ScalarField& u0) {
  return assemble_load(mesh, u0);
}

std::vector<double> nodal_from_moments(const QuadMesh& mesh,
                                       std::span<const double> moments) {
  const SparseMatrix mass = assemble_mass(mesh);
  return SpdFactorization(mass).solve(moments);
}

std::vector<double> nodal_interpolant(const QuadMesh& mesh, const ScalarField& f) {
  const index_t m = mesh.nodes_per_side();
  const double h = mesh.h();
  std::vector<double> v(static_cast<std::size_t>(mesh.interior_nodes()));
  for (index_t j = 1; j <= m; ++j) {
    for (index_t i = 1; i <= m; ++i) {
      v[mesh.index(i, j)] = f(i * h, j * h);
    }
  }
  return v;
}

std::vector<double> prolong_space(const QuadMesh& coarse, std::span<const double> v) {
  const index_t n = coarse.cells_per_side;
  if (static_cast<index_t>(v.size()) != coarse.interior_nodes()) {
    throw std::invalid_argument("prolong_space: size mismatch");
  }
  const QuadMesh fine(2 * n);
  // Coarse value with zero extension to the boundary.
  const auto at = [&](index_t i, index_t j) -> double {
    return coarse.is_interior(i, j) ? v[coarse.index(i, j)] : 0.0;
  };
  std::vector<double> out(static_cast<std::size_t>(fine.interior_nodes()));
  for (index_t j = 1; j <= fine.nodes_per_side(); ++j) {
    for (index_t i = 1; i <= fine.nodes_per_side(); ++i) {
      double val;
      if (i % 2 == 0 && j % 2 == 0) {
        val = at(i / 2, j / 2);
      } else if (i % 2 == 1 && j % 2 == 0) {
        val = 0.5 * (at((i - 1) / 2, j / 2) + at((i + 1) / 2, j / 2));
      } else if (i % 2 == 0 && j % 2 == 1) {
        val = 0.5 * (at(i / 2, (j - 1) / 2) + at(i / 2, (j + 1) / 2));
      } else {
        val = 0.25 * (at((i - 1) / 2, (j - 1) / 2) + at((i + 1) / 2, (j - 1) / 2) +
                      at((i - 1) / 2, (j + 1) / 2) + at((i + 1) / 2, (j + 1) / 2));
      }
      out[fine.index(i, j)] = val;
    }
  }
  return out;
}

}  // namespace parasol
