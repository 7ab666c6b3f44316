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

#include "darcy/postproc.hpp"

#include "darcy/error.hpp"
#include "darcy/parallel.hpp"
#include "darcy/sparse_cholesky.hpp"
#include "darcy/topology.hpp"

#include <cmath>

namespace darcy {

Eigen::VectorXd dual_gradient(const Eigen::SparseMatrix<double>& divergence,
                              const Eigen::SparseMatrix<double>& inclusion,
                              const Eigen::VectorXd& pressure_dual, const Eigen::VectorXd& trace) {
  if (pressure_dual.size() != divergence.rows() || trace.size() != inclusion.cols())
    fail(ErrorCategory::kInvalidArgument, "dual gradient: dimension mismatch");
  return -(divergence.transpose() * pressure_dual) + inclusion * trace;
}

Eigen::VectorXd dual_gradient_coefficients(const MeshSpec& spec, const BlockSolution& block,
                                           const AssemblyOptions& opt) {
  const StructuredGrid fine = block.layout.fine();
  const Eigen::SparseMatrix<double> e = build_divergence(fine).to_sparse();
  const Eigen::SparseMatrix<double> n2 = build_inclusion(fine).to_sparse();
  const Eigen::VectorXd g = dual_gradient(e, n2, block.pressure, block.trace);
  SparseCholesky m2;
  m2.compute(assemble_unweighted_face_mass(spec, block.layout, opt), "unweighted face mass");
  return m2.solve(g);
}

namespace {

struct Squares {
  double p = 0.0, grad = 0.0, u = 0.0, div = 0.0, div_residual = 0.0;
};

struct ElementFields {
  Eigen::VectorXd pressure;  // primal volume coefficients
  Eigen::VectorXd flux;
  Eigen::VectorXd divergence;
  Eigen::VectorXd source;
  Eigen::VectorXd gradient;  // primal face coefficients (may be empty)
};

// Gathers element-local coefficients of one block element.
ElementFields gather(const ElementBasis& basis, const Tabulation& mass_tab, const MeshSpec& spec,
                     const BlockSolution& block, const Eigen::MatrixXd& div_ref, Int3 le,
                     const Eigen::VectorXd* gradient) {
  ElementFields ef;
  const std::vector<Index> fmap = block.layout.face_map(le);
  const std::vector<Index> cmap = block.layout.cell_map(le);
  const int nv = basis.volume_count(), nf = basis.face_count();
  Eigen::VectorXd pd(nv);
  ef.source.resize(nv);
  for (int i = 0; i < nv; ++i) {
    pd[i] = block.pressure[cmap[i]];
    ef.source[i] = block.source.size() ? block.source[cmap[i]] : 0.0;
  }
  const ElementGeometry mg = make_geometry(spec, block.layout.origin + le, mass_tab.rule);
  ef.pressure = volume_mass(basis, mass_tab, mg).llt().solve(pd);
  ef.flux.resize(nf);
  for (int i = 0; i < nf; ++i) ef.flux[i] = block.flux[fmap[i]];
  ef.divergence = div_ref * ef.flux;
  if (gradient) {
    ef.gradient.resize(nf);
    for (int i = 0; i < nf; ++i) ef.gradient[i] = (*gradient)[fmap[i]];
  }
  return ef;
}

Vec3 face_value(const Tabulation& tab, int q, const Eigen::VectorXd& coeff, int nf_family) {
  Vec3 v;
  for (int a = 0; a < 3; ++a) v[a] = tab.family[a].col(q).dot(coeff.segment(a * nf_family, nf_family));
  return v;
}

Squares block_squares(const MeshSpec& spec, const BlockSolution& block, const ExactSolution& exact,
                      const PostprocOptions& opt, bool want_gradient) {
  const int order = block.layout.order;
  const ElementBasis basis(order);
  const Quadrature1D gl = gauss_legendre(order + opt.extra_points);
  const Tabulation tab = Tabulation::make(order, gl);
  const Tabulation mass_tab = Tabulation::make(order, gll_nodes_weights(order + opt.quadrature_bump));
  const Eigen::MatrixXd div_ref = basis.reference_divergence();
  const int nff = basis.family_count();

  Eigen::VectorXd gradient;
  if (want_gradient) {
    AssemblyOptions ao;
    ao.quadrature_bump = opt.quadrature_bump;
    gradient = dual_gradient_coefficients(spec, block, ao);
  }

  Squares sq;
  const StructuredGrid local(block.layout.elements);
  for (Index e = 0; e < local.num_cells(); ++e) {
    const Int3 le = local.cell_coords(e);
    const ElementFields ef =
        gather(basis, mass_tab, spec, block, div_ref, le, want_gradient ? &gradient : nullptr);
    const ElementGeometry geom = make_geometry(spec, block.layout.origin + le, gl);
    for (int q = 0; q < tab.points(); ++q) {
      const double det = geom.determinants[q];
      const double w = tab.weights[q] * det;
      const Vec3& x = geom.points[q];
      const Mat3& j = geom.jacobians[q];
      const double p = tab.volume.col(q).dot(ef.pressure) / det;
      const double div = tab.volume.col(q).dot(ef.divergence) / det;
      const double f_proj = tab.volume.col(q).dot(ef.source) / det;
      const Vec3 u = j * face_value(tab, q, ef.flux, nff) / det;
      if (exact.pressure) sq.p += w * std::pow(p - exact.pressure(x), 2);
      if (exact.velocity) sq.u += w * (u - exact.velocity(x)).squaredNorm();
      sq.div += w * std::pow(div - (exact.source ? exact.source(x) : 0.0), 2);
      sq.div_residual += w * std::pow(div - f_proj, 2);
      if (want_gradient) {
        const Vec3 g = j * face_value(tab, q, ef.gradient, nff) / det;
        sq.grad += w * (g - exact.gradient(x)).squaredNorm();
      }
    }
  }
  return sq;
}

Squares total_squares(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                      const ExactSolution& exact, const PostprocOptions& opt, bool want_gradient) {
  std::vector<Squares> parts(blocks.size());
  parallel_for(static_cast<Index>(blocks.size()), opt.threads, [&](Index b) {
    parts[b] = block_squares(spec, blocks[b], exact, opt, want_gradient);
  });
  Squares t;
  for (const Squares& s : parts) {
    t.p += s.p;
    t.grad += s.grad;
    t.u += s.u;
    t.div += s.div;
    t.div_residual += s.div_residual;
  }
  return t;
}

}  // namespace

ErrorSummary compute_errors(const DarcySolution& solution, const ExactSolution& exact,
                            const PostprocOptions& opt) {
  const bool want_gradient = static_cast<bool>(exact.gradient);
  const Squares t = total_squares(solution.spec, solution.blocks, exact, opt, want_gradient);
  ErrorSummary s;
  s.h = 2.0 / solution.spec.elements.x;
  s.l2_div_residual = std::sqrt(t.div_residual);
  s.hdiv_error = std::sqrt(t.u + t.div);
  s.h1_error = std::sqrt(t.p + t.grad);
  s.l2_pressure = std::sqrt(t.p);
  s.l2_velocity = std::sqrt(t.u);
  return s;
}

double h1_error(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                const ExactSolution& exact, const PostprocOptions& opt) {
  if (!exact.gradient) fail(ErrorCategory::kInvalidArgument, "H1 error needs the exact gradient");
  const Squares t = total_squares(spec, blocks, exact, opt, true);
  return std::sqrt(t.p + t.grad);
}

double hdiv_error(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                  const ExactSolution& exact, const PostprocOptions& opt) {
  const Squares t = total_squares(spec, blocks, exact, opt, false);
  return std::sqrt(t.u + t.div);
}

double l2_div_residual(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                       const PostprocOptions& opt) {
  const Squares t = total_squares(spec, blocks, ExactSolution{}, opt, false);
  return std::sqrt(t.div_residual);
}

std::vector<Sample> sample_fields(const DarcySolution& solution, int resolution,
                                  const PostprocOptions& opt) {
  if (resolution < 1) fail(ErrorCategory::kInvalidArgument, "sample resolution must be >= 1");
  const MeshSpec& spec = solution.spec;
  const int order = spec.order;
  const ElementBasis basis(order);
  const Tabulation mass_tab = Tabulation::make(order, gll_nodes_weights(order + opt.quadrature_bump));
  const Eigen::MatrixXd div_ref = basis.reference_divergence();
  const StructuredGrid mesh = spec.element_grid();
  const int per_element = resolution * resolution * resolution;
  std::vector<Sample> out(static_cast<size_t>(mesh.num_cells()) * per_element);

  std::vector<double> lattice(resolution);
  for (int i = 0; i < resolution; ++i) lattice[i] = -1.0 + (2.0 * i + 1.0) / resolution;

  parallel_for(static_cast<Index>(solution.blocks.size()), opt.threads, [&](Index bi) {
    const BlockSolution& block = solution.blocks[bi];
    const StructuredGrid local(block.layout.elements);
    Eigen::VectorXd vol(basis.volume_count());
    Eigen::Matrix3Xd face;
    for (Index e = 0; e < local.num_cells(); ++e) {
      const Int3 le = local.cell_coords(e);
      const Int3 ge = block.layout.origin + le;
      const ElementFields ef = gather(basis, mass_tab, spec, block, div_ref, le, nullptr);
      const ElementGeometry geom = make_geometry(spec, ge, gauss_legendre(1));
      const size_t base = static_cast<size_t>(mesh.cell_index(ge)) * per_element;
      int k = 0;
      for (int c = 0; c < resolution; ++c)
        for (int b = 0; b < resolution; ++b)
          for (int a = 0; a < resolution; ++a, ++k) {
            const Vec3 xi(lattice[a], lattice[b], lattice[c]);
            const Mat3 j = geom.jacobian(xi);
            const double det = j.determinant();
            basis.volume(xi, vol.data());
            basis.face(xi, face);
            Sample& s = out[base + k];
            s.x = geom.map(xi);
            s.p = vol.dot(ef.pressure) / det;
            s.u = j * (face * ef.flux) / det;
          }
    }
  });
  return out;
}

double mass_balance(const DarcySolution& solution) {
  double outflow = 0.0, source = 0.0;
  for (const BlockSolution& b : solution.blocks) {
    const StructuredGrid fine = b.layout.fine();
    const StructuredGrid mesh_fine(solution.spec.elements * solution.spec.order);
    const Int3 origin = b.layout.origin * b.layout.order;
    for (int side = 0; side < 6; ++side) {
      const int axis = side_axis(side);
      const double sign = side_is_plus(side) ? 1.0 : -1.0;
      for (Index k = 0; k < fine.num_side_faces(side); ++k) {
        const Index f = fine.side_face(side, k);
        int ax;
        Int3 c;
        fine.face_coords(f, ax, c);
        const int n = origin[axis] + c[axis];
        if (n == 0 || n == mesh_fine.cells()[axis]) outflow += sign * b.flux[f];
      }
    }
    if (b.source.size()) source += b.source.sum();
  }
  return outflow - source;
}

RateSummary convergence_rates(const std::vector<double>& h, const std::vector<double>& error) {
  if (h.size() != error.size() || h.size() < 2)
    fail(ErrorCategory::kInvalidArgument, "convergence rates need at least two refinements");
  for (size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0))
      fail(ErrorCategory::kInvalidArgument, "undefined rate: nonpositive error or mesh size");
  }
  RateSummary r;
  for (size_t i = 1; i < h.size(); ++i)
    r.pairwise.push_back(std::log(error[i] / error[i - 1]) / std::log(h[i] / h[i - 1]));
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(error[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(error[i]) - my);
    sxx += dx * dx;
  }
  r.least_squares = sxy / sxx;
  return r;
}

}  // namespace darcy
