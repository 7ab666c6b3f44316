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

namespace darcy {

const char* representation_name(Representation r) {
  switch (r) {
    case Representation::kPrimal2: return "primal-2";
    case Representation::kPrimal3: return "primal-3";
    case Representation::kDual0: return "dual-0";
    case Representation::kTrace2: return "trace-2";
    case Representation::kDualTrace0: return "dual-trace-0";
  }
  return "unknown";
}

Eigen::VectorXd DualDofVector::to_primal() const {
  if (!mass) fail(ErrorCategory::kInvalidArgument, "dual vector has no mass matrix link");
  return mass->llt().solve(values);
}

DualDofVector make_dual(const Eigen::MatrixXd& mass, const DofVector& primal) {
  if (mass.rows() != primal.values.size())
    fail(ErrorCategory::kInvalidArgument, "mass matrix and primal vector sizes differ");
  DualDofVector d;
  d.subdomain = primal.subdomain;
  d.representation = primal.representation == Representation::kTrace2
                         ? Representation::kDualTrace0
                         : Representation::kDual0;
  d.values = mass * primal.values;
  d.mass = std::make_shared<const Eigen::MatrixXd>(mass);
  return d;
}

double dual_pairing(const DualDofVector& dual, const DofVector& primal) {
  if (dual.values.size() != primal.values.size()) {
    fail(ErrorCategory::kInvalidArgument,
         "pairing size mismatch: " + std::to_string(dual.values.size()) + " vs " +
             std::to_string(primal.values.size()));
  }
  if (dual.subdomain != primal.subdomain)
    fail(ErrorCategory::kInvalidArgument, "pairing across different subdomains");
  return dual.values.dot(primal.values);
}

ElementBasis::ElementBasis(int order)
    : order_(order), line_(order), grid_(Int3::uniform(order)) {
  if (order > kMaxOrder)
    fail(ErrorCategory::kInvalidArgument, "order above " + std::to_string(kMaxOrder));
}

void ElementBasis::volume(const Vec3& xi, double* values) const {
  const int n = order_;
  double ex[16], ey[16], ez[16];
  line_.edge(xi.x(), ex);
  line_.edge(xi.y(), ey);
  line_.edge(xi.z(), ez);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) values[i + n * (j + n * k)] = ex[i] * ey[j] * ez[k];
}

void ElementBasis::face_family(int axis, const Vec3& xi, double* values) const {
  const int n = order_;
  int t0, t1;
  tangential_axes(axis, t0, t1);
  double l[17], e0[16], e1[16];
  line_.lagrange(xi[axis], l);
  line_.edge(xi[t0], e0);
  line_.edge(xi[t1], e1);
  // Within a family: index = c[t0] + n * (c[t1] + n * c[axis]).
  for (int c = 0; c <= n; ++c)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) values[a + n * (b + n * c)] = l[c] * e0[a] * e1[b];
}

void ElementBasis::face(const Vec3& xi, Eigen::Matrix3Xd& values) const {
  const int nf = family_count();
  values.setZero(3, face_count());
  std::vector<double> buf(nf);
  for (int axis = 0; axis < 3; ++axis) {
    face_family(axis, xi, buf.data());
    for (int f = 0; f < nf; ++f) values(axis, axis * nf + f) = buf[f];
  }
}

Eigen::MatrixXd ElementBasis::reference_divergence() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(volume_count(), face_count());
  for (Index c = 0; c < grid_.num_cells(); ++c) {
    const Int3 v = grid_.cell_coords(c);
    for (int axis = 0; axis < 3; ++axis) {
      Int3 lo = v, hi = v;
      hi[axis] += 1;
      d(c, grid_.face_index(axis, lo)) = -1.0;
      d(c, grid_.face_index(axis, hi)) = 1.0;
    }
  }
  return d;
}

namespace {

void check_reference(const Vec3& xi) {
  for (int a = 0; a < 3; ++a) {
    if (xi[a] < -1.0 - 1e-14 || xi[a] > 1.0 + 1e-14)
      fail(ErrorCategory::kInvalidArgument, "reference point outside [-1,1]^3");
  }
}

}  // namespace

Eigen::VectorXd eval_volume_basis(const ElementBasis& basis, const ElementGeometry& geom,
                                  const Vec3& xi) {
  check_reference(xi);
  Eigen::VectorXd v(basis.volume_count());
  basis.volume(xi, v.data());
  return v / geom.jacobian(xi).determinant();
}

Eigen::Matrix3Xd eval_face_basis(const ElementBasis& basis, const ElementGeometry& geom,
                                 const Vec3& xi) {
  check_reference(xi);
  Eigen::Matrix3Xd v;
  basis.face(xi, v);
  const Mat3 j = geom.jacobian(xi);
  return (j / j.determinant()) * v;
}

TraceBasis trace_restriction(int order) {
  if (order < 1) fail(ErrorCategory::kInvalidArgument, "order must be >= 1");
  const StructuredGrid grid(Int3::uniform(order));
  TraceBasis t;
  t.order = order;
  for (int side = 0; side < 6; ++side) {
    const Index n = grid.num_side_faces(side);
    for (Index k = 0; k < n; ++k) {
      t.face.push_back(static_cast<int>(grid.side_face(side, k)));
      t.sign.push_back(side_is_plus(side) ? 1 : -1);
      t.side.push_back(side);
    }
  }
  return t;
}

void TraceBasis::tangential_index(int b, int& i, int& j) const {
  const int per_side = order * order;
  const int k = b % per_side;
  i = k % order;
  j = k / order;
}

double TraceBasis::density(const SpectralBasis1D& line, int b, double s, double t) const {
  int i, j;
  tangential_index(b, i, j);
  double es[16], et[16];
  line.edge(s, es);
  line.edge(t, et);
  return es[i] * et[j];
}

Vec3 side_point(int side, double s, double t) {
  const int axis = side_axis(side);
  int t0, t1;
  tangential_axes(axis, t0, t1);
  Vec3 xi;
  xi[axis] = side_is_plus(side) ? 1.0 : -1.0;
  xi[t0] = s;
  xi[t1] = t;
  return xi;
}

}  // namespace darcy
