/*
  Copyright 2026 The darcy-dd Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "darcy/assembly.hpp"

#include "darcy/error.hpp"
#include "darcy/topology.hpp"

#include <map>

namespace darcy {

Mat3 inverse_permeability(const Permeability& perm, const Vec3& x, Index element) {
  const Mat3 k = perm.tensor(x, element);
  Eigen::LLT<Mat3> llt(k);
  if (llt.info() != Eigen::Success || (k - k.transpose()).norm() > 1e-12 * k.norm()) {
    fail(ErrorCategory::kData, "permeability not symmetric positive definite on element " +
                                   std::to_string(element));
  }
  return llt.solve(Mat3::Identity());
}

Tabulation Tabulation::make(int order, const Quadrature1D& rule) {
  Tabulation t;
  t.order = order;
  t.rule = rule;
  const ElementBasis basis(order);
  const int q1 = rule.size();
  const int q = q1 * q1 * q1;
  t.volume.resize(basis.volume_count(), q);
  for (int a = 0; a < 3; ++a) t.family[a].resize(basis.family_count(), q);
  t.weights.resize(q);
  int p = 0;
  for (int k = 0; k < q1; ++k)
    for (int j = 0; j < q1; ++j)
      for (int i = 0; i < q1; ++i, ++p) {
        const Vec3 xi(rule.nodes[i], rule.nodes[j], rule.nodes[k]);
        t.weights[p] = rule.weights[i] * rule.weights[j] * rule.weights[k];
        basis.volume(xi, t.volume.col(p).data());
        for (int a = 0; a < 3; ++a) basis.face_family(a, xi, t.family[a].col(p).data());
      }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      t.family_gram[a][b] = t.family[a] * t.weights.asDiagonal() * t.family[b].transpose();
  t.volume_gram = t.volume * t.weights.asDiagonal() * t.volume.transpose();
  return t;
}

namespace {

void check_tabulation(const Tabulation& tab, const ElementGeometry& geom) {
  if (static_cast<int>(geom.determinants.size()) != tab.points())
    fail(ErrorCategory::kInternal, "geometry not sampled at the tabulation nodes");
}

// sum_ab G_ab-weighted family products, where g holds the 3x3 metric per node.
Eigen::MatrixXd assemble_metric(const ElementBasis& basis, const Tabulation& tab,
                                const std::vector<Mat3>& g) {
  const int nf = basis.family_count();
  Eigen::MatrixXd m(basis.face_count(), basis.face_count());
  Eigen::VectorXd gab(tab.points());
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      for (int p = 0; p < tab.points(); ++p) gab[p] = g[p](a, b);
      m.block(a * nf, b * nf, nf, nf) =
          tab.family[a] * gab.asDiagonal() * tab.family[b].transpose();
      if (b != a) m.block(b * nf, a * nf, nf, nf) = m.block(a * nf, b * nf, nf, nf).transpose();
    }
  }
  return m;
}

Eigen::MatrixXd assemble_affine(const ElementBasis& basis, const Tabulation& tab, const Mat3& g) {
  const int nf = basis.family_count();
  Eigen::MatrixXd m(basis.face_count(), basis.face_count());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m.block(a * nf, b * nf, nf, nf) = g(a, b) * tab.family_gram[a][b];
  return m;
}

}  // namespace

Eigen::MatrixXd face_mass_weighted(const ElementBasis& basis, const Tabulation& tab,
                                   const ElementGeometry& geom, const Permeability& perm) {
  check_tabulation(tab, geom);
  if (geom.mapping.is_affine() && perm.per_element_constant()) {
    const Mat3& j = geom.jacobians[0];
    const Mat3 kinv = inverse_permeability(perm, geom.points[0], geom.element_id);
    return assemble_affine(basis, tab, j.transpose() * kinv * j / geom.determinants[0]);
  }
  std::vector<Mat3> g(tab.points());
  for (int p = 0; p < tab.points(); ++p) {
    const Mat3& j = geom.jacobians[p];
    const Mat3 kinv = inverse_permeability(perm, geom.points[p], geom.element_id);
    g[p] = j.transpose() * kinv * j * (tab.weights[p] / geom.determinants[p]);
  }
  return assemble_metric(basis, tab, g);
}

Eigen::MatrixXd face_mass(const ElementBasis& basis, const Tabulation& tab,
                          const ElementGeometry& geom) {
  check_tabulation(tab, geom);
  if (geom.mapping.is_affine()) {
    const Mat3& j = geom.jacobians[0];
    return assemble_affine(basis, tab, j.transpose() * j / geom.determinants[0]);
  }
  std::vector<Mat3> g(tab.points());
  for (int p = 0; p < tab.points(); ++p) {
    const Mat3& j = geom.jacobians[p];
    g[p] = j.transpose() * j * (tab.weights[p] / geom.determinants[p]);
  }
  return assemble_metric(basis, tab, g);
}

Eigen::MatrixXd volume_mass(const ElementBasis& basis, const Tabulation& tab,
                            const ElementGeometry& geom) {
  check_tabulation(tab, geom);
  (void)basis;
  if (geom.mapping.is_affine()) return tab.volume_gram / geom.determinants[0];
  Eigen::VectorXd w(tab.points());
  for (int p = 0; p < tab.points(); ++p) w[p] = tab.weights[p] / geom.determinants[p];
  return tab.volume * w.asDiagonal() * tab.volume.transpose();
}

namespace {

// Area element |det J J^-T e_axis| and outward unit normal on a side.
void side_metric(const Mat3& j, int side, double& area, Vec3& normal) {
  const int axis = side_axis(side);
  const Vec3 c = j.col((axis + 1) % 3).cross(j.col((axis + 2) % 3));
  area = c.norm();
  normal = (side_is_plus(side) ? 1.0 : -1.0) * c / area;
}

}  // namespace

Eigen::MatrixXd boundary_mass(const ElementBasis& basis, const ElementGeometry& geom,
                              int points) {
  const int n = basis.order();
  const int per_side = n * n;
  const Quadrature1D gl = gauss_legendre(points);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6 * per_side, 6 * per_side);
  std::vector<double> es(n), et(n);
  Eigen::VectorXd tau(per_side);
  for (int side = 0; side < 6; ++side) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(per_side, per_side);
    for (int b = 0; b < points; ++b) {
      for (int a = 0; a < points; ++a) {
        const double s = gl.nodes[a], t = gl.nodes[b];
        basis.line().edge(s, es.data());
        basis.line().edge(t, et.data());
        for (int jj = 0; jj < n; ++jj)
          for (int ii = 0; ii < n; ++ii) tau[ii + n * jj] = es[ii] * et[jj];
        double area;
        Vec3 normal;
        side_metric(geom.jacobian(side_point(side, s, t)), side, area, normal);
        block += (gl.weights[a] * gl.weights[b] / area) * tau * tau.transpose();
      }
    }
    m.block(side * per_side, side * per_side, per_side, per_side) = block;
  }
  return m;
}

Eigen::VectorXd rhs_volume(const ScalarField& f, const ElementBasis& basis,
                           const ElementGeometry& geom, int points) {
  const int n = basis.order();
  const auto& x = basis.line().nodes();
  const Quadrature1D gl = gauss_legendre(points);
  Eigen::VectorXd out(basis.volume_count());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec3 lo(x[i], x[j], x[k]);
        const Vec3 hi(x[i + 1], x[j + 1], x[k + 1]);
        const Vec3 half = 0.5 * (hi - lo);
        const Vec3 mid = 0.5 * (hi + lo);
        const double scale = half.prod();
        double sum = 0.0;
        for (int c = 0; c < points; ++c)
          for (int b = 0; b < points; ++b)
            for (int a = 0; a < points; ++a) {
              const Vec3 xi = mid + half.cwiseProduct(Vec3(gl.nodes[a], gl.nodes[b], gl.nodes[c]));
              const double w = gl.weights[a] * gl.weights[b] * gl.weights[c];
              sum += w * f(geom.map(xi)) * geom.jacobian(xi).determinant();
            }
        out[i + n * (j + n * k)] = sum * scale;
      }
  return out;
}

Eigen::VectorXd rhs_dirichlet(const ScalarField& p, const ElementBasis& basis,
                              const ElementGeometry& geom, int side, int points) {
  const int n = basis.order();
  const Quadrature1D gl = gauss_legendre(points);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n * n);
  std::vector<double> es(n), et(n);
  for (int b = 0; b < points; ++b)
    for (int a = 0; a < points; ++a) {
      const double s = gl.nodes[a], t = gl.nodes[b];
      basis.line().edge(s, es.data());
      basis.line().edge(t, et.data());
      const double v = gl.weights[a] * gl.weights[b] * p(geom.map(side_point(side, s, t)));
      for (int jj = 0; jj < n; ++jj)
        for (int ii = 0; ii < n; ++ii) out[ii + n * jj] += v * es[ii] * et[jj];
    }
  return out;
}

Eigen::VectorXd rhs_neumann(const FluxField& u, const ElementBasis& basis,
                            const ElementGeometry& geom, int side, int points) {
  const int n = basis.order();
  const auto& x = basis.line().nodes();
  const Quadrature1D gl = gauss_legendre(points);
  Eigen::VectorXd out(n * n);
  for (int jj = 0; jj < n; ++jj)
    for (int ii = 0; ii < n; ++ii) {
      const double hs = 0.5 * (x[ii + 1] - x[ii]), ms = 0.5 * (x[ii + 1] + x[ii]);
      const double ht = 0.5 * (x[jj + 1] - x[jj]), mt = 0.5 * (x[jj + 1] + x[jj]);
      double sum = 0.0;
      for (int b = 0; b < points; ++b)
        for (int a = 0; a < points; ++a) {
          const Vec3 xi = side_point(side, ms + hs * gl.nodes[a], mt + ht * gl.nodes[b]);
          double area;
          Vec3 normal;
          side_metric(geom.jacobian(xi), side, area, normal);
          sum += gl.weights[a] * gl.weights[b] * area * u(geom.map(xi), normal);
        }
      out[ii + n * jj] = sum * hs * ht;
    }
  return out;
}

Int3 BlockLayout::element_coords(Index local) const {
  return origin + StructuredGrid(elements).cell_coords(local);
}

std::vector<Index> BlockLayout::face_map(Int3 local_element) const {
  const StructuredGrid element_grid(Int3::uniform(order));
  const StructuredGrid block = fine();
  std::vector<Index> map(element_grid.num_faces());
  for (Index f = 0; f < element_grid.num_faces(); ++f) {
    int axis;
    Int3 c;
    element_grid.face_coords(f, axis, c);
    map[f] = block.face_index(axis, local_element * order + c);
  }
  return map;
}

std::vector<Index> BlockLayout::cell_map(Int3 local_element) const {
  const StructuredGrid element_grid(Int3::uniform(order));
  const StructuredGrid block = fine();
  std::vector<Index> map(element_grid.num_cells());
  for (Index c = 0; c < element_grid.num_cells(); ++c)
    map[c] = block.cell_index(local_element * order + element_grid.cell_coords(c));
  return map;
}

void assemble_face_mass(const MeshSpec& spec, const Permeability& perm,
                        const AssemblyOptions& opt, bool sparse, BlockMatrices& out) {
  const BlockLayout& layout = out.layout;
  const int order = layout.order;
  const ElementBasis basis(order);
  const Quadrature1D rule = gll_nodes_weights(order + opt.quadrature_bump);
  const Tabulation tab = Tabulation::make(order, rule);
  const StructuredGrid local(layout.elements);
  const Index n = layout.num_faces();

  std::vector<Eigen::Triplet<double>> trip;
  if (sparse) {
    trip.reserve(static_cast<size_t>(local.num_cells()) * basis.face_count() *
                 basis.face_count());
  } else {
    out.face_mass = Eigen::MatrixXd::Zero(n, n);
  }
  for (Index e = 0; e < local.num_cells(); ++e) {
    const Int3 le = local.cell_coords(e);
    const ElementGeometry geom = make_geometry(spec, layout.origin + le, rule);
    const Eigen::MatrixXd m = face_mass_weighted(basis, tab, geom, perm);
    const std::vector<Index> map = layout.face_map(le);
    for (int b = 0; b < m.cols(); ++b)
      for (int a = 0; a < m.rows(); ++a) {
        if (sparse) {
          if (m(a, b) != 0.0) trip.emplace_back(map[a], map[b], m(a, b));
        } else {
          out.face_mass(map[a], map[b]) += m(a, b);
        }
      }
  }
  if (sparse) {
    out.face_mass_sparse.resize(n, n);
    out.face_mass_sparse.setFromTriplets(trip.begin(), trip.end());
  }
}

Eigen::SparseMatrix<double> assemble_unweighted_face_mass(const MeshSpec& spec,
                                                          const BlockLayout& layout,
                                                          const AssemblyOptions& opt) {
  const int order = layout.order;
  const ElementBasis basis(order);
  const Quadrature1D rule = gll_nodes_weights(order + opt.quadrature_bump);
  const Tabulation tab = Tabulation::make(order, rule);
  const StructuredGrid local(layout.elements);
  std::vector<Eigen::Triplet<double>> trip;
  for (Index e = 0; e < local.num_cells(); ++e) {
    const Int3 le = local.cell_coords(e);
    const ElementGeometry geom = make_geometry(spec, layout.origin + le, rule);
    const Eigen::MatrixXd m = face_mass(basis, tab, geom);
    const std::vector<Index> map = layout.face_map(le);
    for (int b = 0; b < m.cols(); ++b)
      for (int a = 0; a < m.rows(); ++a)
        if (m(a, b) != 0.0) trip.emplace_back(map[a], map[b], m(a, b));
  }
  Eigen::SparseMatrix<double> s(layout.num_faces(), layout.num_faces());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

void assemble_volume_terms(const MeshSpec& spec, const ScalarField* f,
                           const AssemblyOptions& opt, BlockMatrices& out) {
  const BlockLayout& layout = out.layout;
  const int order = layout.order;
  const ElementBasis basis(order);
  const Quadrature1D rule = gll_nodes_weights(order + opt.quadrature_bump);
  const Tabulation tab = Tabulation::make(order, rule);
  const StructuredGrid local(layout.elements);
  out.volume_mass.resize(local.num_cells());
  out.rhs_volume = Eigen::VectorXd::Zero(layout.num_cells());
  for (Index e = 0; e < local.num_cells(); ++e) {
    const Int3 le = local.cell_coords(e);
    const ElementGeometry geom = make_geometry(spec, layout.origin + le, rule);
    out.volume_mass[e] = volume_mass(basis, tab, geom);
    if (f) {
      const Eigen::VectorXd r = rhs_volume(*f, basis, geom, order + 4);
      const std::vector<Index> map = layout.cell_map(le);
      for (int i = 0; i < r.size(); ++i) out.rhs_volume[map[i]] = r[i];
    }
  }
}

namespace {

template <typename Fn>
Eigen::VectorXd block_boundary_data(const MeshSpec& spec, const BlockLayout& layout,
                                    const std::vector<Index>& dofs, Fn&& side_values) {
  const int order = layout.order;
  const int per_side = order * order;
  std::map<std::pair<Index, int>, Eigen::VectorXd> cache;
  const StructuredGrid local(layout.elements);
  const Quadrature1D center = gll_nodes_weights(1);
  Eigen::VectorXd out(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) {
    const BoundaryDofLocation loc = locate_boundary_dof(order, layout.elements, dofs[i]);
    const auto key = std::make_pair(local.cell_index(loc.element), loc.side);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const ElementGeometry geom = make_geometry(spec, layout.origin + loc.element, center);
      it = cache.emplace(key, side_values(geom, loc.side)).first;
    }
    out[i] = it->second[loc.trace_index - loc.side * per_side];
  }
  return out;
}

}  // namespace

Eigen::VectorXd block_dirichlet_pairing(const MeshSpec& spec, const BlockLayout& layout,
                                        const ScalarField& p, const std::vector<Index>& dofs,
                                        int points) {
  const ElementBasis basis(layout.order);
  return block_boundary_data(spec, layout, dofs, [&](const ElementGeometry& g, int side) {
    return rhs_dirichlet(p, basis, g, side, points);
  });
}

Eigen::VectorXd block_neumann_flux(const MeshSpec& spec, const BlockLayout& layout,
                                   const FluxField& u, const std::vector<Index>& dofs,
                                   int points) {
  const ElementBasis basis(layout.order);
  return block_boundary_data(spec, layout, dofs, [&](const ElementGeometry& g, int side) {
    return rhs_neumann(u, basis, g, side, points);
  });
}

}  // namespace darcy
