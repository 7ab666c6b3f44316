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

#include "darcy/mesh.hpp"

#include "darcy/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace darcy {

namespace {

constexpr double kPi = std::numbers::pi;
const Vec3 kWheelerAmplitude(0.03, -0.04, 0.05);

}  // namespace

MappingKind parse_mapping(std::string_view id) {
  if (id == "identity") return MappingKind::kIdentity;
  if (id == "wheeler_deformed" || id == "wheeler") return MappingKind::kWheelerDeformed;
  if (id == "spe10_box") return MappingKind::kSpe10Box;
  fail(ErrorCategory::kConfig, "unknown mapping id '" + std::string(id) + "'");
}

std::string mapping_name(MappingKind kind) {
  switch (kind) {
    case MappingKind::kIdentity: return "identity";
    case MappingKind::kWheelerDeformed: return "wheeler_deformed";
    case MappingKind::kSpe10Box: return "spe10_box";
  }
  return "unknown";
}

Vec3 Mapping::map(const Vec3& unit) const {
  if (kind == MappingKind::kWheelerDeformed) {
    const double g = std::cos(3 * kPi * unit.x()) * std::cos(3 * kPi * unit.y()) *
                     std::cos(3 * kPi * unit.z());
    return unit + kWheelerAmplitude * g;
  }
  return unit.cwiseProduct(extent);
}

Mat3 Mapping::jacobian(const Vec3& unit) const {
  if (kind == MappingKind::kWheelerDeformed) {
    const double cx = std::cos(3 * kPi * unit.x()), sx = std::sin(3 * kPi * unit.x());
    const double cy = std::cos(3 * kPi * unit.y()), sy = std::sin(3 * kPi * unit.y());
    const double cz = std::cos(3 * kPi * unit.z()), sz = std::sin(3 * kPi * unit.z());
    const Vec3 grad = -3 * kPi * Vec3(sx * cy * cz, cx * sy * cz, cx * cy * sz);
    return Mat3::Identity() + kWheelerAmplitude * grad.transpose();
  }
  return extent.asDiagonal();
}

ReferenceElement ReferenceElement::make(int order, int quadrature_bump) {
  ReferenceElement r;
  r.order = order;
  r.gll = gll_nodes_weights(order);
  r.quadrature = gll_nodes_weights(order + quadrature_bump);
  return r;
}

void MeshSpec::validate() const {
  if (order < 1) fail(ErrorCategory::kSpec, "element order must be >= 1");
  for (int a = 0; a < 3; ++a) {
    if (elements[a] < 1 || subdomains[a] < 1 || per_subdomain[a] < 1)
      fail(ErrorCategory::kSpec, "element and subdomain counts must be positive");
    if (subdomains[a] * per_subdomain[a] != elements[a]) {
      fail(ErrorCategory::kSpec, "K1 * K2 != K: K1=" + to_string(subdomains) +
                                     " K2=" + to_string(per_subdomain) +
                                     " K=" + to_string(elements));
    }
  }
}

Vec3 element_to_unit(const MeshSpec& spec, Int3 element, const Vec3& xi) {
  Vec3 u;
  for (int a = 0; a < 3; ++a) u[a] = (element[a] + 0.5 * (xi[a] + 1.0)) / spec.elements[a];
  return u;
}

Vec3 map_point(const MeshSpec& spec, Index element_id, const Vec3& xi) {
  for (int a = 0; a < 3; ++a) {
    if (xi[a] < -1.0 - 1e-14 || xi[a] > 1.0 + 1e-14)
      fail(ErrorCategory::kInvalidArgument, "reference point outside [-1,1]^3");
  }
  const Int3 e = spec.element_grid().cell_coords(element_id);
  return spec.mapping.map(element_to_unit(spec, e, xi));
}

namespace {

Vec3 to_unit(Int3 mesh_elements, Int3 element, const Vec3& xi) {
  Vec3 u;
  for (int a = 0; a < 3; ++a) u[a] = (element[a] + 0.5 * (xi[a] + 1.0)) / mesh_elements[a];
  return u;
}

Mat3 element_jacobian(const Mapping& mapping, Int3 mesh_elements, Int3 element, const Vec3& xi) {
  Mat3 j = mapping.jacobian(to_unit(mesh_elements, element, xi));
  for (int a = 0; a < 3; ++a) j.col(a) *= 0.5 / mesh_elements[a];
  return j;
}

}  // namespace

Vec3 ElementGeometry::map(const Vec3& xi) const {
  return mapping.map(to_unit(mesh_elements, element, xi));
}

Mat3 ElementGeometry::jacobian(const Vec3& xi) const {
  return element_jacobian(mapping, mesh_elements, element, xi);
}

ElementGeometry make_geometry(const MeshSpec& spec, Int3 element, const Quadrature1D& rule) {
  ElementGeometry g;
  g.element = element;
  g.element_id = spec.element_grid().cell_index(element);
  g.mesh_elements = spec.elements;
  g.mapping = spec.mapping;
  const int q = rule.size();
  g.points.reserve(q * q * q);
  g.jacobians.reserve(q * q * q);
  g.determinants.reserve(q * q * q);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) {
        const Vec3 xi(rule.nodes[i], rule.nodes[j], rule.nodes[k]);
        const Mat3 jac = g.jacobian(xi);
        const double det = jac.determinant();
        if (!(det > 0.0)) {
          fail(ErrorCategory::kData,
               "inverted element " + to_string(element) + ": det J = " + std::to_string(det));
        }
        g.points.push_back(g.map(xi));
        g.jacobians.push_back(jac);
        g.determinants.push_back(det);
      }
  return g;
}

void jacobian(const ElementGeometry& geom, const Vec3& xi, Mat3& j, double& det) {
  for (int a = 0; a < 3; ++a) {
    if (xi[a] < -1.0 - 1e-14 || xi[a] > 1.0 + 1e-14)
      fail(ErrorCategory::kInvalidArgument, "reference point outside [-1,1]^3");
  }
  j = geom.jacobian(xi);
  det = j.determinant();
  if (!(det > 0.0)) {
    fail(ErrorCategory::kData, "inverted element " + to_string(geom.element) +
                                   ": det J = " + std::to_string(det));
  }
}

int BoundarySpec::dirichlet_count() const {
  int n = 0;
  for (auto t : sides) n += t == BcType::kDirichlet ? 1 : 0;
  return n;
}

int SubdomainPartition::subdomain_of_element(Int3 element) const {
  Int3 c;
  for (int a = 0; a < 3; ++a) c[a] = element[a] / spec.per_subdomain[a];
  return static_cast<int>(spec.subdomain_grid().cell_index(c));
}

SubdomainPartition build_partition(const MeshSpec& spec, const BoundarySpec& bc) {
  spec.validate();
  for (int s = 0; s < 6; ++s) {
    if (bc.sides[s] == BcType::kUnassigned)
      fail(ErrorCategory::kSpec, "boundary side " + std::to_string(s) + " has no condition");
  }

  SubdomainPartition p;
  p.spec = spec;
  p.bc = bc;
  const StructuredGrid sub_grid = spec.subdomain_grid();
  const StructuredGrid elem_grid = spec.element_grid();
  const Int3 k2 = spec.per_subdomain;

  p.subdomains.resize(sub_grid.num_cells());
  for (Index s = 0; s < sub_grid.num_cells(); ++s) {
    Subdomain& sd = p.subdomains[s];
    sd.id = static_cast<int>(s);
    sd.coords = sub_grid.cell_coords(s);
    sd.origin = sd.coords * k2;
    sd.elements.reserve(k2.product());
    for (int k = 0; k < k2.z; ++k)
      for (int j = 0; j < k2.y; ++j)
        for (int i = 0; i < k2.x; ++i)
          sd.elements.push_back(elem_grid.cell_index(sd.origin + Int3{i, j, k}));
  }

  // Classify every element-level face by where its normal coordinate sits.
  for (int axis = 0; axis < 3; ++axis) {
    int t0, t1;
    tangential_axes(axis, t0, t1);
    const Int3 ext = elem_grid.face_extent(axis);
    // Interface groups keyed by (lower subdomain, axis); one per subdomain
    // pair and filled in face order.
    std::vector<int> group_of_lower(sub_grid.num_cells(), -1);
    for (int n = 0; n < ext[axis]; ++n) {
      for (int b = 0; b < ext[t1]; ++b) {
        for (int a = 0; a < ext[t0]; ++a) {
          Int3 c;
          c[axis] = n;
          c[t0] = a;
          c[t1] = b;
          const Index face = elem_grid.face_index(axis, c);
          if (n == 0 || n == spec.elements[axis]) {
            const int side = 2 * axis + (n == 0 ? 0 : 1);
            Int3 owner = c;
            if (n != 0) owner[axis] -= 1;
            BoundaryFace bf{face, elem_grid.cell_index(owner), side, p.subdomain_of_element(owner)};
            (bc.sides[side] == BcType::kDirichlet ? p.dirichlet : p.neumann).push_back(bf);
          } else if (n % k2[axis] == 0) {
            Int3 lo = c;
            lo[axis] -= 1;
            const int first = p.subdomain_of_element(lo);
            const int second = p.subdomain_of_element(c);
            int& g = group_of_lower[first];
            if (g < 0) {
              g = static_cast<int>(p.interfaces.size());
              p.interfaces.push_back(InterfaceGroup{first, second, axis, {}});
            }
            p.interfaces[g].faces.push_back(face);
          } else {
            ++p.interior_faces;
          }
        }
      }
    }
  }
  return p;
}

std::string check_partition(const SubdomainPartition& p) {
  std::ostringstream err;
  const StructuredGrid elem_grid = p.spec.element_grid();
  const Index n_elem = elem_grid.num_cells();

  std::vector<char> seen(n_elem, 0);
  Index covered = 0;
  for (const auto& sd : p.subdomains) {
    for (Index e : sd.elements) {
      if (e < 0 || e >= n_elem) {
        err << "element id " << e << " out of range; ";
        continue;
      }
      if (seen[e]++) err << "element " << e << " in more than one subdomain; ";
      ++covered;
    }
  }
  if (covered != n_elem) err << "subdomains cover " << covered << " of " << n_elem << " elements; ";

  std::vector<char> face_seen(elem_grid.num_faces(), 0);
  Index claimed = p.interior_faces;
  auto claim = [&](Index f) {
    if (face_seen[f]++) err << "face " << f << " classified twice; ";
    ++claimed;
  };
  for (const auto& g : p.interfaces) {
    if (g.first >= g.second) err << "interface pair not ordered (" << g.first << "," << g.second << "); ";
    for (Index f : g.faces) {
      claim(f);
      int axis;
      Int3 c;
      elem_grid.face_coords(f, axis, c);
      Int3 lo = c;
      lo[axis] -= 1;
      if (p.subdomain_of_element(lo) != g.first || p.subdomain_of_element(c) != g.second)
        err << "interface face " << f << " not between its pair; ";
    }
  }
  for (const auto& bf : p.dirichlet) claim(bf.face);
  for (const auto& bf : p.neumann) claim(bf.face);
  if (claimed != elem_grid.num_faces())
    err << "faces classified " << claimed << " of " << elem_grid.num_faces() << "; ";
  return err.str();
}

}  // namespace darcy
