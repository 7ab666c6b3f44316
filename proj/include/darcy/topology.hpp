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

#ifndef DARCY_TOPOLOGY_HPP
#define DARCY_TOPOLOGY_HPP

#include "darcy/grid.hpp"
#include "darcy/mesh.hpp"
#include "darcy/types.hpp"

#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

namespace darcy {

struct IncidenceEntry {
  Index row = 0;
  Index col = 0;
  int value = 0;
  bool operator==(const IncidenceEntry&) const = default;
};

// Integer matrix with entries in {-1, 0, +1}, stored as triplets in row order.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const std::vector<IncidenceEntry>& entries() const { return entries_; }
  void add(Index row, Index col, int value) { entries_.push_back({row, col, value}); }

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;
  Eigen::MatrixXi to_dense_int() const;

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<IncidenceEntry> entries_;
};

/// Writes the matrix in Matrix Market coordinate format (1-based).
void write_matrix_market(std::ostream& out, const IncidenceMatrix& m);

/// Divergence incidence of a structured grid of GLL sub-cells: one row per
/// cell, one column per face; +1 where the face normal points out of the cell.
IncidenceMatrix build_divergence(const StructuredGrid& grid);
/// Same for a block of `elements` elements of order `order`.
IncidenceMatrix build_divergence(int order, Int3 elements);
/// Planar variant (cells nx * ny, edges numbered x-normal then y-normal).
IncidenceMatrix build_divergence_2d(int nx, int ny);

/// Boundary inclusion: rows are faces of the grid, columns boundary DOFs in
/// side order (x-, x+, y-, y+, z-, z+), tangential lexicographic within a
/// side; the entry is the outward orientation sign.
IncidenceMatrix build_inclusion(const StructuredGrid& grid);
IncidenceMatrix build_inclusion(int order, Int3 elements);

// Where a boundary DOF of a block sits, in element terms.
struct BoundaryDofLocation {
  int side = 0;
  Index face = 0;       // block face index
  Int3 element;         // element coordinates inside the block
  int trace_index = 0;  // index into the element's TraceBasis
};

BoundaryDofLocation locate_boundary_dof(int order, Int3 elements, Index b);

struct SubdomainTrace {
  Int3 fine_origin;                 // first fine cell in the global fine grid
  Int3 fine_cells;                  // K2 * N
  std::vector<Index> lambda;        // per local boundary DOF, -1 if Dirichlet
  std::vector<Index> dirichlet;     // local boundary DOFs on the Dirichlet set
  std::vector<Index> neumann;       // local boundary DOFs on the Neumann set
  Index boundary_count() const { return static_cast<Index>(lambda.size()); }
};

struct TraceConnectivity {
  int order = 1;
  Index num_lambda = 0;
  std::vector<SubdomainTrace> subdomains;
  std::vector<Index> lambda_face;     // global fine face of each lambda
  std::vector<int> lambda_side;       // outer side for Neumann lambdas, -1 on interfaces
  std::vector<int> lambda_owner[2];   // owning subdomains (second is -1 on Neumann)

  // Sparse selection from global lambdas to the boundary DOFs of one
  // subdomain (boundary_count x num_lambda, entries +1).
  Eigen::SparseMatrix<double> selection(int subdomain) const;
};

/// Global lambda numbering over interface and Neumann fine faces (in global
/// fine-face order) and its map to each subdomain's boundary DOFs.
/// Throws kTopology if a face is claimed by the wrong number of subdomains.
TraceConnectivity build_trace_connectivity(const SubdomainPartition& partition, int order);

}  // namespace darcy

#endif  // DARCY_TOPOLOGY_HPP
