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

#include "darcy/basis.hpp"
#include "darcy/error.hpp"
#include "darcy/mesh.hpp"
#include "darcy/topology.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace darcy {
namespace {

TEST(IncidenceTest, EveryCellHasSixFaces) {
  const IncidenceMatrix e = build_divergence(2, {2, 1, 3});
  const StructuredGrid g(Int3{4, 2, 6});
  ASSERT_EQ(e.rows(), g.num_cells());
  ASSERT_EQ(e.cols(), g.num_faces());
  const Eigen::MatrixXi d = e.to_dense_int();
  for (Index r = 0; r < d.rows(); ++r) {
    EXPECT_EQ((d.row(r).array() == 1).count(), 3);
    EXPECT_EQ((d.row(r).array() == -1).count(), 3);
  }
  for (Index c = 0; c < d.cols(); ++c) EXPECT_LE(d.col(c).cwiseAbs().sum(), 2);
}

TEST(IncidenceTest, ColumnSumsEqualBoundaryOrientation) {
  // Summing the divergence over all cells leaves only the boundary fluxes.
  const StructuredGrid g(Int3{3, 2, 4});
  const Eigen::MatrixXi e = build_divergence(g).to_dense_int();
  const Eigen::MatrixXi n2 = build_inclusion(g).to_dense_int();
  EXPECT_EQ(n2.rows(), g.num_faces());
  EXPECT_EQ(n2.cols(), g.num_boundary_faces());
  const Eigen::RowVectorXi lhs = Eigen::RowVectorXi::Ones(e.rows()) * e;
  const Eigen::VectorXi rhs = n2 * Eigen::VectorXi::Ones(n2.cols());
  EXPECT_EQ(lhs.transpose(), rhs);
}

TEST(IncidenceTest, InclusionSignsFollowSides) {
  const StructuredGrid g(Int3{2, 3, 2});
  const IncidenceMatrix n2 = build_inclusion(g);
  EXPECT_EQ(n2.entries().size(), static_cast<size_t>(g.num_boundary_faces()));
  for (const auto& e : n2.entries()) {
    int side = 0;
    while (side < 5 && e.col >= g.side_offset(side + 1)) ++side;
    EXPECT_EQ(e.value, side_is_plus(side) ? 1 : -1);
    EXPECT_EQ(e.row, g.side_face(side, e.col - g.side_offset(side)));
  }
}

TEST(IncidenceTest, BlockMatchesFineGrid) {
  EXPECT_EQ(build_divergence(3, {2, 2, 1}), build_divergence(StructuredGrid(Int3{6, 6, 3})));
  EXPECT_EQ(build_inclusion(2, {1, 3, 1}), build_inclusion(StructuredGrid(Int3{2, 6, 2})));
}

TEST(IncidenceTest, ElementMatchesReferenceDivergence) {
  for (int n = 1; n <= 4; ++n) {
    const Eigen::MatrixXd d = ElementBasis(n).reference_divergence();
    EXPECT_EQ(build_divergence(n, {1, 1, 1}).to_dense(), d);
  }
}

TEST(IncidenceTest, PlanarGridCounts) {
  const IncidenceMatrix e = build_divergence_2d(4, 3);
  EXPECT_EQ(e.rows(), 12);
  EXPECT_EQ(e.cols(), 5 * 3 + 4 * 4);
  const Eigen::MatrixXi d = e.to_dense_int();
  EXPECT_EQ(d.sum(), 0);
  for (Index r = 0; r < d.rows(); ++r) EXPECT_EQ(d.row(r).cwiseAbs().sum(), 4);
  EXPECT_THROW(build_divergence_2d(0, 3), Error);
}

TEST(IncidenceTest, MatrixMarketIsOneBased) {
  std::ostringstream out;
  write_matrix_market(out, build_divergence_2d(2, 1));
  std::istringstream in(out.str());
  std::string banner;
  std::getline(in, banner);
  EXPECT_EQ(banner, "%%MatrixMarket matrix coordinate integer general");
  Index rows, cols, nnz;
  in >> rows >> cols >> nnz;
  EXPECT_EQ(rows, 2);
  EXPECT_EQ(cols, 7);
  EXPECT_EQ(nnz, 8);
  Index r, c;
  int v;
  Index read = 0;
  while (in >> r >> c >> v) {
    EXPECT_GE(r, 1);
    EXPECT_LE(r, rows);
    EXPECT_GE(c, 1);
    EXPECT_LE(c, cols);
    EXPECT_TRUE(v == 1 || v == -1);
    ++read;
  }
  EXPECT_EQ(read, nnz);
}

TEST(IncidenceTest, SparseAndDenseAgree) {
  const IncidenceMatrix e = build_divergence(2, {1, 2, 1});
  EXPECT_EQ(Eigen::MatrixXd(e.to_sparse()), e.to_dense());
}

TEST(BoundaryDofTest, LocatesElementTrace) {
  const int order = 2;
  const Int3 elements{2, 1, 2};
  const StructuredGrid g(elements * order);
  const TraceBasis t = trace_restriction(order);
  const ElementBasis eb(order);
  for (Index b = 0; b < g.num_boundary_faces(); ++b) {
    const BoundaryDofLocation loc = locate_boundary_dof(order, elements, b);
    EXPECT_EQ(t.side[loc.trace_index], loc.side);
    int axis;
    Int3 c;
    g.face_coords(loc.face, axis, c);
    EXPECT_EQ(axis, side_axis(loc.side));
    // The element-local face of the trace DOF sits at the same fine face.
    int laxis;
    Int3 lc;
    eb.grid().face_coords(t.face[loc.trace_index], laxis, lc);
    EXPECT_EQ(laxis, axis);
    for (int a = 0; a < 3; ++a) EXPECT_EQ(loc.element[a] * order + lc[a], c[a]);
  }
}

MeshSpec spec_of(Int3 k1, Int3 k2, int order) {
  MeshSpec s;
  s.subdomains = k1;
  s.per_subdomain = k2;
  s.elements = k1 * k2;
  s.order = order;
  return s;
}

BoundarySpec x_dirichlet() {
  BoundarySpec bc = BoundarySpec::all(BcType::kNeumann);
  bc.sides[0] = bc.sides[1] = BcType::kDirichlet;
  return bc;
}

TEST(TraceConnectivityTest, CountsInterfaceAndNeumannFaces) {
  const SubdomainPartition p1 = build_partition(spec_of({2, 1, 1}, {1, 1, 1}, 1), x_dirichlet());
  EXPECT_EQ(build_trace_connectivity(p1, 1).num_lambda, 1 + 4 + 4);
  const SubdomainPartition p2 = build_partition(spec_of({2, 1, 1}, {1, 1, 1}, 2), x_dirichlet());
  const TraceConnectivity tc = build_trace_connectivity(p2, 2);
  EXPECT_EQ(tc.num_lambda, 4 + 16 + 16);
  Index interface = 0;
  for (Index l = 0; l < tc.num_lambda; ++l) {
    if (tc.lambda_side[l] < 0) {
      ++interface;
      EXPECT_EQ(tc.lambda_owner[0][l], 0);
      EXPECT_EQ(tc.lambda_owner[1][l], 1);
    } else {
      EXPECT_GE(tc.lambda_side[l], 2);
      EXPECT_EQ(tc.lambda_owner[1][l], -1);
    }
  }
  EXPECT_EQ(interface, 4);
}

TEST(TraceConnectivityTest, SelectionCoversEachLambda) {
  const SubdomainPartition p = build_partition(spec_of({2, 2, 1}, {1, 2, 2}, 2), x_dirichlet());
  const TraceConnectivity tc = build_trace_connectivity(p, 2);
  Eigen::VectorXd claims = Eigen::VectorXd::Zero(tc.num_lambda);
  for (size_t s = 0; s < tc.subdomains.size(); ++s) {
    const SubdomainTrace& st = tc.subdomains[s];
    const Eigen::SparseMatrix<double> l = tc.selection(static_cast<int>(s));
    EXPECT_EQ(l.rows(), st.boundary_count());
    EXPECT_EQ(l.cols(), tc.num_lambda);
    EXPECT_EQ(static_cast<size_t>(l.nonZeros()), st.boundary_count() - st.dirichlet.size());
    claims += (Eigen::RowVectorXd::Ones(l.rows()) * l).transpose();
    for (Index b : st.dirichlet) EXPECT_EQ(st.lambda[b], -1);
  }
  for (Index l = 0; l < tc.num_lambda; ++l)
    EXPECT_EQ(claims[l], tc.lambda_side[l] < 0 ? 2.0 : 1.0);
}

}  // namespace
}  // namespace darcy
