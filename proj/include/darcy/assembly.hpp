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

#ifndef DARCY_ASSEMBLY_HPP
#define DARCY_ASSEMBLY_HPP

#include "darcy/basis.hpp"
#include "darcy/mesh.hpp"
#include "darcy/types.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <vector>

namespace darcy {

using ScalarField = std::function<double(const Vec3&)>;
// Normal flux data: (physical point, outward unit normal) -> value.
using FluxField = std::function<double(const Vec3&, const Vec3&)>;

class Permeability {
 public:
  virtual ~Permeability() = default;
  // K(x) on element `element` (global element id).
  virtual Mat3 tensor(const Vec3& x, Index element) const = 0;
  // True when K is constant on every element; enables the affine fast path.
  virtual bool per_element_constant() const { return false; }
};

/// K^-1 with an SPD check. Throws kData when K is not SPD.
Mat3 inverse_permeability(const Permeability& perm, const Vec3& x, Index element);

class ConstantPermeability : public Permeability {
 public:
  explicit ConstantPermeability(const Mat3& k) : k_(k) {}
  Mat3 tensor(const Vec3&, Index) const override { return k_; }
  bool per_element_constant() const override { return true; }

 private:
  Mat3 k_;
};

class FunctionPermeability : public Permeability {
 public:
  explicit FunctionPermeability(std::function<Mat3(const Vec3&)> f) : f_(std::move(f)) {}
  Mat3 tensor(const Vec3& x, Index) const override { return f_(x); }

 private:
  std::function<Mat3(const Vec3&)> f_;
};

// Diagonal K per element (global element id).
class CellPermeability : public Permeability {
 public:
  explicit CellPermeability(std::shared_ptr<const std::vector<Vec3>> diag)
      : diag_(std::move(diag)) {}
  Mat3 tensor(const Vec3&, Index element) const override {
    return (*diag_)[element].asDiagonal();
  }
  bool per_element_constant() const override { return true; }

 private:
  std::shared_ptr<const std::vector<Vec3>> diag_;
};

// Reference basis values tabulated at the tensor nodes of a quadrature rule.
struct Tabulation {
  int order = 1;
  Quadrature1D rule;
  Eigen::MatrixXd volume;           // N^3 x Q
  Eigen::MatrixXd family[3];        // N^2 (N + 1) x Q, one per face family
  Eigen::VectorXd weights;          // Q tensor weights
  // Reference Gram blocks int phi_a phi_b^T for the affine path.
  Eigen::MatrixXd family_gram[3][3];
  Eigen::MatrixXd volume_gram;

  static Tabulation make(int order, const Quadrature1D& rule);
  int points() const { return static_cast<int>(weights.size()); }
};

/// Element face mass int Psi2^T K^-1 Psi2 (Piola-mapped basis).
Eigen::MatrixXd face_mass_weighted(const ElementBasis& basis, const Tabulation& tab,
                                   const ElementGeometry& geom, const Permeability& perm);
/// Element face mass without weight (K = I).
Eigen::MatrixXd face_mass(const ElementBasis& basis, const Tabulation& tab,
                          const ElementGeometry& geom);
/// Element volume mass int Psi3^T Psi3.
Eigen::MatrixXd volume_mass(const ElementBasis& basis, const Tabulation& tab,
                            const ElementGeometry& geom);
/// Element boundary mass of the outward trace basis over all six sides,
/// ordered as TraceBasis (block diagonal by side).
Eigen::MatrixXd boundary_mass(const ElementBasis& basis, const ElementGeometry& geom,
                              int points);

/// Volume integrals of f over the GLL sub-cells of one element.
Eigen::VectorXd rhs_volume(const ScalarField& f, const ElementBasis& basis,
                           const ElementGeometry& geom, int points);
/// Pairing int tau_b p dA^ of p with the outward trace basis on one element side
/// (N^2 values, tangential lexicographic).
Eigen::VectorXd rhs_dirichlet(const ScalarField& p, const ElementBasis& basis,
                              const ElementGeometry& geom, int side, int points);
/// Outward fluxes int u dA over the GLL sub-faces of one element side.
Eigen::VectorXd rhs_neumann(const FluxField& u, const ElementBasis& basis,
                            const ElementGeometry& geom, int side, int points);

// Maps element-local face / cell numbers into a block of elements.
struct BlockLayout {
  int order = 1;
  Int3 origin;    // first element of the block (mesh element coordinates)
  Int3 elements;  // elements per axis in the block

  StructuredGrid fine() const { return StructuredGrid(elements * order); }
  Index num_faces() const { return fine().num_faces(); }
  Index num_cells() const { return fine().num_cells(); }
  Index num_elements() const { return elements.product(); }
  Int3 element_coords(Index local) const;  // mesh coordinates of block element `local`
  std::vector<Index> face_map(Int3 local_element) const;
  std::vector<Index> cell_map(Int3 local_element) const;
};

struct AssemblyOptions {
  int quadrature_bump = 2;
};

// Per-block assembled operators.
struct BlockMatrices {
  BlockLayout layout;
  Eigen::MatrixXd face_mass;                    // dense (subdomain blocks)
  Eigen::SparseMatrix<double> face_mass_sparse; // sparse (whole-mesh block)
  std::vector<Eigen::MatrixXd> volume_mass;     // one N^3 x N^3 block per element
  Eigen::VectorXd rhs_volume;                   // N3(f), block cell order
};

/// Assembles the K^-1-weighted face mass of a block, dense or sparse.
void assemble_face_mass(const MeshSpec& spec, const Permeability& perm,
                        const AssemblyOptions& opt, bool sparse, BlockMatrices& out);
/// Assembles the unweighted face mass of a block as a sparse matrix.
Eigen::SparseMatrix<double> assemble_unweighted_face_mass(const MeshSpec& spec,
                                                          const BlockLayout& layout,
                                                          const AssemblyOptions& opt);
/// Volume mass blocks and the volume right-hand side of a block.
void assemble_volume_terms(const MeshSpec& spec, const ScalarField* f,
                           const AssemblyOptions& opt, BlockMatrices& out);

/// Boundary data for the listed boundary DOFs of a block (block boundary
/// numbering). The Dirichlet variant pairs p with the trace basis, the Neumann
/// variant integrates the outward flux over each sub-face.
Eigen::VectorXd block_dirichlet_pairing(const MeshSpec& spec, const BlockLayout& layout,
                                        const ScalarField& p, const std::vector<Index>& dofs,
                                        int points);
Eigen::VectorXd block_neumann_flux(const MeshSpec& spec, const BlockLayout& layout,
                                   const FluxField& u, const std::vector<Index>& dofs,
                                   int points);

}  // namespace darcy

#endif  // DARCY_ASSEMBLY_HPP
