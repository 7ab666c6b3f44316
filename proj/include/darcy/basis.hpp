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

#ifndef DARCY_BASIS_HPP
#define DARCY_BASIS_HPP

#include "darcy/gll.hpp"
#include "darcy/grid.hpp"
#include "darcy/mesh.hpp"
#include "darcy/types.hpp"

#include <Eigen/Dense>
#include <memory>

namespace darcy {

// Which space a coefficient vector lives in.
enum class Representation {
  kPrimal2,     // face fluxes N2(u)
  kPrimal3,     // volume integrals N3(p)
  kDual0,       // dual volume coefficients (M3 N3)
  kTrace2,      // boundary fluxes B2
  kDualTrace0,  // dual trace coefficients
};

const char* representation_name(Representation r);

struct DofVector {
  Representation representation = Representation::kPrimal2;
  int subdomain = -1;  // -1: whole mesh
  Eigen::VectorXd values;
};

// Dual coefficients plus the mass matrix that relates them to the primal
// expansion (dual = mass * primal). The mass link may be empty when only the
// pairing is needed.
struct DualDofVector {
  Representation representation = Representation::kDual0;
  int subdomain = -1;
  Eigen::VectorXd values;
  std::shared_ptr<const Eigen::MatrixXd> mass;

  // Primal coefficients M^-1 * values. Requires `mass`.
  Eigen::VectorXd to_primal() const;
};

DualDofVector make_dual(const Eigen::MatrixXd& mass, const DofVector& primal);

/// Coefficient dot product; equals the L2 pairing of the represented fields.
/// Throws kInvalidArgument on size or scope mismatch.
double dual_pairing(const DualDofVector& dual, const DofVector& primal);

// Reference-element spectral bases of one order. Local numbering follows the
// StructuredGrid rules on the N x N x N grid of GLL sub-cells: volumes
// lexicographic, faces by family (x, y, z), tangential lexicographic with the
// normal index slowest.
class ElementBasis {
 public:
  static constexpr int kMaxOrder = 15;

  explicit ElementBasis(int order);

  int order() const { return order_; }
  int volume_count() const { return order_ * order_ * order_; }
  int face_count() const { return 3 * order_ * order_ * (order_ + 1); }
  int family_count() const { return order_ * order_ * (order_ + 1); }
  int trace_count() const { return 6 * order_ * order_; }
  const StructuredGrid& grid() const { return grid_; }
  const SpectralBasis1D& line() const { return line_; }

  // Reference volume basis e_i(x) e_j(y) e_k(z), length volume_count().
  void volume(const Vec3& xi, double* values) const;

  // Reference face basis, columns are the vector values (3 x face_count).
  void face(const Vec3& xi, Eigen::Matrix3Xd& values) const;

  // Scalar component of the face basis for one family (the only nonzero
  // component), length family_count().
  void face_family(int axis, const Vec3& xi, double* values) const;

  // Reference divergence of the face basis, expressed in the volume basis:
  // div(face_j) = sum_i D_ij volume_i. Entries are 0 / +-1.
  Eigen::MatrixXd reference_divergence() const;

 private:
  int order_;
  SpectralBasis1D line_;
  StructuredGrid grid_;
};

/// Physical volume basis at reference point xi: reference values / det J.
Eigen::VectorXd eval_volume_basis(const ElementBasis& basis, const ElementGeometry& geom,
                                  const Vec3& xi);
/// Physical face basis (contravariant Piola J / det J), 3 x face_count.
Eigen::Matrix3Xd eval_face_basis(const ElementBasis& basis, const ElementGeometry& geom,
                                 const Vec3& xi);

// Boundary trace of the face basis on one element: the 6 N^2 boundary faces
// ordered by side (x-, x+, y-, y+, z-, z+), tangential lexicographic within a
// side. Coefficients are outward fluxes.
struct TraceBasis {
  int order = 1;
  std::vector<int> face;   // local face index of each boundary DOF
  std::vector<int> sign;   // +1 on plus sides, -1 on minus sides
  std::vector<int> side;

  int size() const { return static_cast<int>(face.size()); }
  // Outward reference flux density of DOF b on its side at tangential
  // reference coordinates (s, t); integrates to 1 over the side.
  double density(const SpectralBasis1D& line, int b, double s, double t) const;
  // Tangential index pair of DOF b within its side.
  void tangential_index(int b, int& i, int& j) const;
};

TraceBasis trace_restriction(int order);

/// Maps a point (s, t) on element side `side` to reference coordinates.
Vec3 side_point(int side, double s, double t);

}  // namespace darcy

#endif  // DARCY_BASIS_HPP
