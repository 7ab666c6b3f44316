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

#ifndef DARCY_MESH_HPP
#define DARCY_MESH_HPP

#include "darcy/gll.hpp"
#include "darcy/grid.hpp"
#include "darcy/types.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace darcy {

// Global deformation applied to the unit reference box [0,1]^3.
enum class MappingKind { kIdentity, kWheelerDeformed, kSpe10Box };

MappingKind parse_mapping(std::string_view id);
std::string mapping_name(MappingKind kind);

struct Mapping {
  MappingKind kind = MappingKind::kIdentity;
  // Physical size of the box for kIdentity / kSpe10Box. The wheeler map
  // always acts on the unit box.
  Vec3 extent = Vec3::Ones();

  bool is_affine() const { return kind != MappingKind::kWheelerDeformed; }

  // Unit-box coordinates (x^, y^, z^) -> physical coordinates.
  Vec3 map(const Vec3& unit) const;
  // d x / d unit.
  Mat3 jacobian(const Vec3& unit) const;
};

struct ReferenceElement {
  int order = 1;
  Quadrature1D gll;         // order + 1 points
  Quadrature1D quadrature;  // integration rule for mass matrices (GLL)

  static ReferenceElement make(int order, int quadrature_bump = 2);
};

struct MeshSpec {
  Int3 elements;        // K per axis
  Int3 subdomains;      // K1 per axis
  Int3 per_subdomain;   // K2 per axis
  Mapping mapping;
  int order = 1;

  // Throws ErrorCategory::kSpec when K1 * K2 != K or counts are invalid.
  void validate() const;

  // Reference-element size 2 / K per axis.
  Vec3 h_hat() const {
    return {2.0 / elements.x, 2.0 / elements.y, 2.0 / elements.z};
  }

  StructuredGrid element_grid() const { return StructuredGrid(elements); }
  StructuredGrid subdomain_grid() const { return StructuredGrid(subdomains); }
  // GLL-refined grid of the whole mesh (K * N cells per axis).
  StructuredGrid fine_grid() const { return StructuredGrid(elements * order); }
};

/// Unit-box coordinates of reference point `xi` of element `element`.
Vec3 element_to_unit(const MeshSpec& spec, Int3 element, const Vec3& xi);

/// Physical coordinates of reference point `xi` in element `element_id`.
Vec3 map_point(const MeshSpec& spec, Index element_id, const Vec3& xi);

// Per-element geometry, sampled at the tensor quadrature nodes of a rule.
struct ElementGeometry {
  Int3 element;
  Index element_id = 0;
  Int3 mesh_elements;  // K of the owning mesh
  Mapping mapping;

  // Values at the quadrature nodes, lexicographic (x fastest).
  std::vector<Vec3> points;
  std::vector<Mat3> jacobians;
  std::vector<double> determinants;

  Vec3 map(const Vec3& xi) const;
  Mat3 jacobian(const Vec3& xi) const;
};

/// Build the geometry of one element at the nodes of `rule`.
/// Throws ErrorCategory::kData (inverted element) if det J <= 0 anywhere.
ElementGeometry make_geometry(const MeshSpec& spec, Int3 element, const Quadrature1D& rule);

/// Jacobian d x / d xi and its determinant at a reference point.
/// Throws ErrorCategory::kData if det J <= 0.
void jacobian(const ElementGeometry& geom, const Vec3& xi, Mat3& j, double& det);

enum class BcType { kUnassigned, kDirichlet, kNeumann };

// Boundary condition type per outer box side, indexed by Side.
struct BoundarySpec {
  std::array<BcType, 6> sides{BcType::kUnassigned, BcType::kUnassigned,
                              BcType::kUnassigned, BcType::kUnassigned,
                              BcType::kUnassigned, BcType::kUnassigned};

  static BoundarySpec all(BcType t) {
    BoundarySpec b;
    b.sides.fill(t);
    return b;
  }
  int dirichlet_count() const;
};

struct Subdomain {
  int id = 0;
  Int3 coords;   // position in the subdomain grid
  Int3 origin;   // first element (element coordinates)
  std::vector<Index> elements;  // global element ids, lexicographic
};

// Mesh faces shared by two subdomains i < j.
struct InterfaceGroup {
  int first = 0;
  int second = 0;
  int axis = 0;
  std::vector<Index> faces;  // element-level face ids (element_grid numbering)
};

struct BoundaryFace {
  Index face = 0;     // element-level face id
  Index element = 0;  // owning element
  int side = 0;       // box side it lies on
  int subdomain = 0;
};

struct SubdomainPartition {
  MeshSpec spec;
  BoundarySpec bc;
  std::vector<Subdomain> subdomains;
  std::vector<InterfaceGroup> interfaces;
  std::vector<BoundaryFace> dirichlet;
  std::vector<BoundaryFace> neumann;
  Index interior_faces = 0;  // faces strictly inside one subdomain

  int subdomain_of_element(Int3 element) const;
};

/// Build the decomposition described by `spec`.
/// Throws ErrorCategory::kSpec on K1*K2 != K or an unassigned boundary side.
SubdomainPartition build_partition(const MeshSpec& spec, const BoundarySpec& bc);

/// Checks the partition invariants (cover, disjointness, face categories).
/// Returns an empty string when all hold, otherwise a description.
std::string check_partition(const SubdomainPartition& partition);

}  // namespace darcy

#endif  // DARCY_MESH_HPP
