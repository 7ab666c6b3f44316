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

#include "darcy/topology.hpp"

#include "darcy/error.hpp"

#include <ostream>

namespace darcy {

Eigen::SparseMatrix<double> IncidenceMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.emplace_back(e.row, e.col, e.value);
  Eigen::SparseMatrix<double> m(rows_, cols_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::MatrixXd IncidenceMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& e : entries_) m(e.row, e.col) += e.value;
  return m;
}

Eigen::MatrixXi IncidenceMatrix::to_dense_int() const {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(rows_, cols_);
  for (const auto& e : entries_) m(e.row, e.col) += e.value;
  return m;
}

void write_matrix_market(std::ostream& out, const IncidenceMatrix& m) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.entries().size() << '\n';
  for (const auto& e : m.entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
}

IncidenceMatrix build_divergence(const StructuredGrid& grid) {
  IncidenceMatrix e(grid.num_cells(), grid.num_faces());
  for (Index c = 0; c < grid.num_cells(); ++c) {
    const Int3 v = grid.cell_coords(c);
    for (int axis = 0; axis < 3; ++axis) {
      Int3 hi = v;
      hi[axis] += 1;
      e.add(c, grid.face_index(axis, v), -1);
      e.add(c, grid.face_index(axis, hi), 1);
    }
  }
  return e;
}

IncidenceMatrix build_divergence(int order, Int3 elements) {
  return build_divergence(StructuredGrid(elements * order));
}

IncidenceMatrix build_divergence_2d(int nx, int ny) {
  if (nx < 1 || ny < 1) fail(ErrorCategory::kInvalidArgument, "2D grid needs positive size");
  const Index x_edges = Index{nx + 1} * ny;
  IncidenceMatrix e(Index{nx} * ny, x_edges + Index{nx} * (ny + 1));
  auto x_edge = [&](int i, int j) { return j + Index{ny} * i; };
  auto y_edge = [&](int i, int j) { return x_edges + i + Index{nx} * j; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Index c = i + Index{nx} * j;
      e.add(c, x_edge(i, j), -1);
      e.add(c, x_edge(i + 1, j), 1);
      e.add(c, y_edge(i, j), -1);
      e.add(c, y_edge(i, j + 1), 1);
    }
  }
  return e;
}

IncidenceMatrix build_inclusion(const StructuredGrid& grid) {
  IncidenceMatrix n(grid.num_faces(), grid.num_boundary_faces());
  Index col = 0;
  for (int side = 0; side < 6; ++side) {
    const Index count = grid.num_side_faces(side);
    for (Index k = 0; k < count; ++k, ++col)
      n.add(grid.side_face(side, k), col, side_is_plus(side) ? 1 : -1);
  }
  return n;
}

IncidenceMatrix build_inclusion(int order, Int3 elements) {
  return build_inclusion(StructuredGrid(elements * order));
}

BoundaryDofLocation locate_boundary_dof(int order, Int3 elements, Index b) {
  const StructuredGrid grid(elements * order);
  BoundaryDofLocation loc;
  int side = 0;
  while (side < 5 && b >= grid.side_offset(side + 1)) ++side;
  const Index k = b - grid.side_offset(side);
  const int axis = side_axis(side);
  int t0, t1;
  tangential_axes(axis, t0, t1);
  const Int3 fine = grid.cells();
  const int a = static_cast<int>(k % fine[t0]);
  const int c = static_cast<int>(k / fine[t0]);
  loc.side = side;
  loc.face = grid.side_face(side, k);
  loc.element[axis] = side_is_plus(side) ? elements[axis] - 1 : 0;
  loc.element[t0] = a / order;
  loc.element[t1] = c / order;
  loc.trace_index = side * order * order + (a % order) + order * (c % order);
  return loc;
}

Eigen::SparseMatrix<double> TraceConnectivity::selection(int subdomain) const {
  const SubdomainTrace& st = subdomains.at(subdomain);
  std::vector<Eigen::Triplet<double>> t;
  for (Index b = 0; b < st.boundary_count(); ++b)
    if (st.lambda[b] >= 0) t.emplace_back(b, st.lambda[b], 1.0);
  Eigen::SparseMatrix<double> s(st.boundary_count(), num_lambda);
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

TraceConnectivity build_trace_connectivity(const SubdomainPartition& partition, int order) {
  const MeshSpec& spec = partition.spec;
  const StructuredGrid fine(spec.elements * order);
  const Int3 block_cells = spec.per_subdomain * order;
  const StructuredGrid block(block_cells);

  TraceConnectivity tc;
  tc.order = order;

  // Number lambdas by scanning global fine faces in order.
  std::vector<Index> lambda_of_face(fine.num_faces(), -1);
  for (Index f = 0; f < fine.num_faces(); ++f) {
    int axis;
    Int3 c;
    fine.face_coords(f, axis, c);
    const int n = c[axis];
    const int extent = fine.cells()[axis];
    int side = -1;
    if (n == 0 || n == extent) {
      side = 2 * axis + (n == 0 ? 0 : 1);
      if (partition.bc.sides[side] != BcType::kNeumann) continue;
    } else if (n % block_cells[axis] != 0) {
      continue;
    }
    lambda_of_face[f] = tc.num_lambda++;
    tc.lambda_face.push_back(f);
    tc.lambda_side.push_back(side);
  }
  tc.lambda_owner[0].assign(tc.num_lambda, -1);
  tc.lambda_owner[1].assign(tc.num_lambda, -1);
  std::vector<int> claims(tc.num_lambda, 0);

  tc.subdomains.resize(partition.subdomains.size());
  for (size_t s = 0; s < partition.subdomains.size(); ++s) {
    SubdomainTrace& st = tc.subdomains[s];
    st.fine_origin = partition.subdomains[s].origin * order;
    st.fine_cells = block_cells;
    st.lambda.assign(block.num_boundary_faces(), -1);
    Index b = 0;
    for (int side = 0; side < 6; ++side) {
      const int axis = side_axis(side);
      int t0, t1;
      tangential_axes(axis, t0, t1);
      const Index count = block.num_side_faces(side);
      for (Index k = 0; k < count; ++k, ++b) {
        Int3 c = st.fine_origin;
        c[t0] += static_cast<int>(k % block_cells[t0]);
        c[t1] += static_cast<int>(k / block_cells[t0]);
        c[axis] += side_is_plus(side) ? block_cells[axis] : 0;
        const Index f = fine.face_index(axis, c);
        const Index l = lambda_of_face[f];
        const bool outer = c[axis] == 0 || c[axis] == fine.cells()[axis];
        if (l < 0) {
          if (!outer || partition.bc.sides[side] != BcType::kDirichlet) {
            fail(ErrorCategory::kTopology, "subdomain " + std::to_string(s) +
                                               " boundary face " + std::to_string(f) +
                                               " has no trace unknown");
          }
          st.dirichlet.push_back(b);
          continue;
        }
        if (outer) st.neumann.push_back(b);
        st.lambda[b] = l;
        const int slot = claims[l]++;
        if (slot < 2) tc.lambda_owner[slot][l] = static_cast<int>(s);
      }
    }
  }

  for (Index l = 0; l < tc.num_lambda; ++l) {
    const int required = tc.lambda_side[l] >= 0 ? 1 : 2;
    if (claims[l] != required) {
      fail(ErrorCategory::kTopology, "dangling face " + std::to_string(tc.lambda_face[l]) +
                                         ": claimed by " + std::to_string(claims[l]) +
                                         " subdomains, expected " + std::to_string(required));
    }
  }
  return tc;
}

}  // namespace darcy
