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
#include "darcy/basis.hpp"
#include "darcy/error.hpp"
#include "darcy/mesh.hpp"

#include <gtest/gtest.h>

namespace darcy {
namespace {

MeshSpec box_spec(Vec3 extent, Int3 elements, int order) {
  MeshSpec s;
  s.elements = s.per_subdomain = elements;
  s.subdomains = Int3::uniform(1);
  s.order = order;
  s.mapping.kind = MappingKind::kSpe10Box;
  s.mapping.extent = extent;
  return s;
}

MeshSpec wheeler_spec(int k, int order) {
  MeshSpec s;
  s.elements = s.per_subdomain = Int3::uniform(k);
  s.subdomains = Int3::uniform(1);
  s.order = order;
  s.mapping.kind = MappingKind::kWheelerDeformed;
  return s;
}

struct Element {
  ElementBasis basis;
  Tabulation tab;
  ElementGeometry geom;
  Element(const MeshSpec& s, Int3 e)
      : basis(s.order),
        tab(Tabulation::make(s.order, ReferenceElement::make(s.order).quadrature)),
        geom(make_geometry(s, e, ReferenceElement::make(s.order).quadrature)) {}
};

TEST(FaceMassTest, LowestOrderBoxClosedForm) {
  // u_x = l_c(x) / (b c) has unit flux through one x face; its L2 products
  // are a / (b c) * [1/3 1/6; 1/6 1/3].
  const Vec3 ext(2.0, 3.0, 4.0);
  const Vec3 kdiag(2.0, 5.0, 0.5);
  Element el(box_spec(ext, {1, 1, 1}, 1), {0, 0, 0});
  const Eigen::MatrixXd m =
      face_mass_weighted(el.basis, el.tab, el.geom, ConstantPermeability(kdiag.asDiagonal()));
  ASSERT_EQ(m.rows(), 6);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
  for (int a = 0; a < 3; ++a) {
    int t0, t1;
    tangential_axes(a, t0, t1);
    const double scale = ext[a] / (ext[t0] * ext[t1]) / kdiag[a];
    expected(2 * a, 2 * a) = expected(2 * a + 1, 2 * a + 1) = scale / 3.0;
    expected(2 * a, 2 * a + 1) = expected(2 * a + 1, 2 * a) = scale / 6.0;
  }
  EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(FaceMassTest, SymmetricPositiveDefinite) {
  for (int order = 1; order <= 3; ++order) {
    Element el(wheeler_spec(3, order), {1, 0, 2});
    const FunctionPermeability perm([](const Vec3& x) {
      Mat3 k = Mat3::Identity();
      k(0, 0) = 1.0 + x.x() * x.x();
      k(1, 2) = k(2, 1) = 0.3 * std::sin(x.y());
      return k;
    });
    const Eigen::MatrixXd m = face_mass_weighted(el.basis, el.tab, el.geom, perm);
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-14 * m.cwiseAbs().maxCoeff());
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    EXPECT_EQ(llt.info(), Eigen::Success);
  }
}

TEST(FaceMassTest, AffinePathMatchesPointwisePath) {
  Mat3 k;
  k << 3.0, 0.5, 0.2, 0.5, 2.0, 0.1, 0.2, 0.1, 1.5;
  const ConstantPermeability fast(k);
  const FunctionPermeability slow([k](const Vec3&) { return k; });
  for (const MeshSpec& s : {box_spec(Vec3(3, 1, 2), {2, 2, 2}, 2), wheeler_spec(2, 2)}) {
    Element el(s, {1, 0, 1});
    const Eigen::MatrixXd a = face_mass_weighted(el.basis, el.tab, el.geom, fast);
    const Eigen::MatrixXd b = face_mass_weighted(el.basis, el.tab, el.geom, slow);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  }
}

TEST(FaceMassTest, UnweightedEqualsIdentityPermeability) {
  Element el(wheeler_spec(2, 2), {0, 1, 1});
  const Eigen::MatrixXd a = face_mass(el.basis, el.tab, el.geom);
  const Eigen::MatrixXd b =
      face_mass_weighted(el.basis, el.tab, el.geom, ConstantPermeability(Mat3::Identity()));
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(VolumeMassTest, LowestOrderIsInverseVolume) {
  Element el(box_spec(Vec3(2, 3, 4), {2, 1, 1}, 1), {1, 0, 0});
  const Eigen::MatrixXd m = volume_mass(el.basis, el.tab, el.geom);
  ASSERT_EQ(m.rows(), 1);
  EXPECT_NEAR(m(0, 0), 1.0 / 12.0, 1e-14);
}

TEST(BoundaryMassTest, LowestOrderIsInverseSideArea) {
  Element el(box_spec(Vec3(2, 3, 4), {1, 1, 1}, 1), {0, 0, 0});
  const Eigen::MatrixXd b = boundary_mass(el.basis, el.geom, 4);
  ASSERT_EQ(b.rows(), 6);
  const double inv_area[3] = {1.0 / 12.0, 1.0 / 8.0, 1.0 / 6.0};
  for (int s = 0; s < 6; ++s) EXPECT_NEAR(b(s, s), inv_area[side_axis(s)], 1e-14);
  EXPECT_NEAR((b - Eigen::MatrixXd(b.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(RhsTest, VolumeOfConstantIsSubcellVolume) {
  const Vec3 ext(2.0, 3.0, 4.0);
  const int n = 2;
  Element el(box_spec(ext, {1, 1, 1}, n), {0, 0, 0});
  const Eigen::VectorXd r = rhs_volume([](const Vec3&) { return 1.0; }, el.basis, el.geom, 4);
  const auto& x = el.basis.line().nodes();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double v = 0.125 * (x[i + 1] - x[i]) * (x[j + 1] - x[j]) * (x[k + 1] - x[k]) *
                         ext.prod();
        EXPECT_NEAR(r[i + n * (j + n * k)], v, 1e-13);
      }
  EXPECT_NEAR(r.sum(), 24.0, 1e-12);
}

TEST(RhsTest, VolumeOfLinearOnDeformedElement) {
  // Sum over sub-cells equals the element integral, checked by a direct rule.
  const MeshSpec s = wheeler_spec(2, 2);
  Element el(s, {1, 1, 0});
  const ScalarField f = [](const Vec3& x) { return 1.0 + x.x() - 2.0 * x.z(); };
  const double total = rhs_volume(f, el.basis, el.geom, 6).sum();
  const Quadrature1D g = gauss_legendre(10);
  double direct = 0.0;
  for (int k = 0; k < g.size(); ++k)
    for (int j = 0; j < g.size(); ++j)
      for (int i = 0; i < g.size(); ++i) {
        const Vec3 xi(g.nodes[i], g.nodes[j], g.nodes[k]);
        direct += g.weights[i] * g.weights[j] * g.weights[k] * f(el.geom.map(xi)) *
                  el.geom.jacobian(xi).determinant();
      }
  EXPECT_NEAR(total, direct, 1e-9);
}

TEST(RhsTest, DirichletPairingOfConstant) {
  for (int n = 1; n <= 3; ++n) {
    Element el(wheeler_spec(2, n), {0, 1, 0});
    for (int side : {0, 1}) {
      const Eigen::VectorXd r =
          rhs_dirichlet([](const Vec3&) { return 1.0; }, el.basis, el.geom, side, n + 2);
      ASSERT_EQ(r.size(), n * n);
      for (int i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], 1.0, 1e-13);
    }
  }
}

TEST(RhsTest, NeumannFluxOfConstantField) {
  const Vec3 ext(2.0, 3.0, 4.0);
  Element el(box_spec(ext, {1, 1, 1}, 2), {0, 0, 0});
  const Vec3 u(2.0, -1.0, 0.5);
  const FluxField flux = [u](const Vec3&, const Vec3& n) { return u.dot(n); };
  for (int side = 0; side < 6; ++side) {
    const int a = side_axis(side);
    const double area = ext.prod() / ext[a];
    const double expected = (side_is_plus(side) ? 1.0 : -1.0) * u[a] * area;
    EXPECT_NEAR(rhs_neumann(flux, el.basis, el.geom, side, 4).sum(), expected, 1e-12);
  }
}

TEST(PermeabilityTest, RejectsIndefiniteTensor) {
  Mat3 k = Mat3::Identity();
  k(2, 2) = -1.0;
  try {
    inverse_permeability(ConstantPermeability(k), Vec3::Zero(), 3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kData);
  }
  k = Mat3::Identity();
  k(0, 1) = 0.5;
  EXPECT_THROW(inverse_permeability(ConstantPermeability(k), Vec3::Zero(), 0), Error);
}

TEST(BlockAssemblyTest, DenseAndSparseAgree) {
  MeshSpec s = wheeler_spec(2, 2);
  const FunctionPermeability perm([](const Vec3& x) {
    return Mat3(Vec3(1.0 + x.x(), 2.0, 1.0 + x.y() * x.z()).asDiagonal());
  });
  BlockMatrices dense, sparse;
  dense.layout = sparse.layout = BlockLayout{2, {0, 0, 0}, {2, 2, 2}};
  assemble_face_mass(s, perm, {}, false, dense);
  assemble_face_mass(s, perm, {}, true, sparse);
  ASSERT_EQ(dense.face_mass.rows(), dense.layout.num_faces());
  EXPECT_LT((dense.face_mass - Eigen::MatrixXd(sparse.face_mass_sparse)).cwiseAbs().maxCoeff(),
            1e-13);
}

TEST(BlockAssemblyTest, LayoutMapsElementFaces) {
  const BlockLayout layout{2, {2, 0, 0}, {2, 1, 1}};
  const StructuredGrid fine = layout.fine();
  EXPECT_EQ(layout.num_cells(), 16);
  EXPECT_EQ(layout.element_coords(1), (Int3{3, 0, 0}));
  const std::vector<Index> f0 = layout.face_map({0, 0, 0});
  const std::vector<Index> f1 = layout.face_map({1, 0, 0});
  // The x-face shared by the two elements: last x-face column of the first,
  // first of the second.
  const StructuredGrid local(Int3::uniform(2));
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      EXPECT_EQ(f0[local.face_index(0, {2, j, k})], f1[local.face_index(0, {0, j, k})]);
  const std::vector<Index> c1 = layout.cell_map({1, 0, 0});
  EXPECT_EQ(c1[0], fine.cell_index({2, 0, 0}));
}

}  // namespace
}  // namespace darcy
