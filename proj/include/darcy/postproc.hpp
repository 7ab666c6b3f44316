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

#ifndef DARCY_POSTPROC_HPP
#define DARCY_POSTPROC_HPP

#include "darcy/assembly.hpp"
#include "darcy/solver.hpp"

#include <functional>
#include <vector>

namespace darcy {

using VectorField = std::function<Vec3(const Vec3&)>;

struct ExactSolution {
  ScalarField pressure;
  VectorField gradient;  // grad p
  VectorField velocity;  // u = -K grad p
  ScalarField source;    // f = div u
};

struct ErrorSummary {
  double h = 0.0;               // reference mesh size 2 / K
  double l2_div_residual = 0.0; // || Psi3 (E N2(u) - N3(f)) ||
  double hdiv_error = 0.0;      // sqrt(||u - u_ex||^2 + ||div u - f_ex||^2)
  double h1_error = 0.0;        // sqrt(||p - p_ex||^2 + ||grad~ p - grad p_ex||^2)
  double l2_pressure = 0.0;
  double l2_velocity = 0.0;
};

struct PostprocOptions {
  int threads = 1;
  int extra_points = 4;  // Gauss points per axis: N + extra_points
  int quadrature_bump = 2;
};

/// Dual gradient coefficients -E^T p~ + N2 g on one block.
Eigen::VectorXd dual_gradient(const Eigen::SparseMatrix<double>& divergence,
                              const Eigen::SparseMatrix<double>& inclusion,
                              const Eigen::VectorXd& pressure_dual, const Eigen::VectorXd& trace);

/// Primal face coefficients of the dual gradient: M2^-1 (dual gradient),
/// with M2 the unweighted face mass of the block.
Eigen::VectorXd dual_gradient_coefficients(const MeshSpec& spec, const BlockSolution& block,
                                           const AssemblyOptions& opt);

/// Error norms of a solved problem against an exact solution. Missing exact
/// fields contribute zero to their norms.
ErrorSummary compute_errors(const DarcySolution& solution, const ExactSolution& exact,
                            const PostprocOptions& opt);

/// sqrt of the sum of squared H1 / Hdiv contributions for arbitrary block data.
double h1_error(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                const ExactSolution& exact, const PostprocOptions& opt);
double hdiv_error(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                  const ExactSolution& exact, const PostprocOptions& opt);
double l2_div_residual(const MeshSpec& spec, const std::vector<BlockSolution>& blocks,
                       const PostprocOptions& opt);

struct Sample {
  Vec3 x;
  double p = 0.0;
  Vec3 u;
};

/// Pointwise reconstruction at a cell-centred lattice of `resolution`^3
/// points per element, ordered by global element id then lattice index.
std::vector<Sample> sample_fields(const DarcySolution& solution, int resolution,
                                  const PostprocOptions& opt);

/// Net outward boundary flux minus the total source (zero for a conservative
/// solution).
double mass_balance(const DarcySolution& solution);

struct RateSummary {
  std::vector<double> pairwise;  // slope between consecutive refinements
  double least_squares = 0.0;
};

/// Log-log slopes of error against h. Throws kInvalidArgument on fewer than
/// two points or nonpositive values.
RateSummary convergence_rates(const std::vector<double>& h, const std::vector<double>& error);

}  // namespace darcy

#endif  // DARCY_POSTPROC_HPP
