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

#ifndef DARCY_SOLVER_HPP
#define DARCY_SOLVER_HPP

#include "darcy/assembly.hpp"
#include "darcy/mesh.hpp"
#include "darcy/spectrum.hpp"
#include "darcy/topology.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace darcy {

struct DarcyProblem {
  MeshSpec spec;
  BoundarySpec bc;
  std::shared_ptr<const Permeability> permeability;
  ScalarField source;     // f; empty means zero
  ScalarField pressure;   // p^ on the Dirichlet set; empty means zero
  FluxField flux;         // u^ . n on the Neumann set; empty means zero
  AssemblyOptions assembly;
};

struct SolverOptions {
  int threads = 1;
  double memory_budget = 3e8;       // stored matrix entries
  bool materialize_local = false;   // form A_i densely per subdomain
  bool condition = false;           // estimate condition numbers
  ConditionOptions condition_options;
};

struct SolveReport {
  double setup_s = 0.0;
  double lambda_s = 0.0;
  double recover_s = 0.0;
  double total_s = 0.0;
  Index dof_u = 0;
  Index dof_p = 0;
  Index dof_lambda = 0;
  // E M^-1 E^T over every face of the mesh.
  double cond_pressure = std::numeric_limits<double>::quiet_NaN();
  // The operator actually factored (Neumann fluxes eliminated).
  double cond_pressure_eliminated = std::numeric_limits<double>::quiet_NaN();
  double cond_lambda = std::numeric_limits<double>::quiet_NaN();
  double stored_entries = 0.0;
  double lambda_residual = 0.0;
  double conservation = 0.0;  // max |E u - N3(f)|
};

// Solution on one block (a subdomain, or the whole mesh for the continuous
// formulation).
struct BlockSolution {
  BlockLayout layout;
  Eigen::VectorXd flux;      // N2(u), block face order
  Eigen::VectorXd pressure;  // dual volume coefficients, block cell order
  Eigen::VectorXd trace;     // dual trace coefficients on every block boundary DOF
  Eigen::VectorXd source;    // N3(f), block cell order
};

enum class Formulation { kContinuous, kDomainDecomposition };

struct DarcySolution {
  Formulation formulation = Formulation::kContinuous;
  MeshSpec spec;
  std::vector<BlockSolution> blocks;
  Eigen::VectorXd lambda;  // DD only
  SolveReport report;
};

// Per-subdomain condensed operators.
struct LocalOperators {
  BlockLayout layout;
  Eigen::MatrixXd x;          // M^-1 E^T
  Eigen::MatrixXd w;          // M^-1 N2
  Eigen::LLT<Eigen::MatrixXd> schur;  // E M^-1 E^T
  Eigen::MatrixXd trace_x;    // N2^T M^-1 E^T
  Eigen::MatrixXd condensed;  // N2^T A N2
  Eigen::MatrixXd a;          // A, only when materialized
  Eigen::VectorXd source;     // N3(f)

  // A N2 g using the cached pieces.
  Eigen::VectorXd apply_a_trace(const Eigen::VectorXd& g) const;
  double stored_entries() const;
};

// Topology shared by all subdomain blocks of one size.
struct BlockTopology {
  Eigen::SparseMatrix<double> divergence;  // E
  Eigen::SparseMatrix<double> inclusion;   // N2

  static BlockTopology make(int order, Int3 elements);
};

/// Condenses one subdomain given its face mass and volume RHS.
/// Throws kSolver (with the subdomain id) when a factorization fails.
LocalOperators build_local_operators(const BlockTopology& topo, const Eigen::MatrixXd& mass,
                                     const Eigen::VectorXd& source, int subdomain,
                                     bool materialize);

struct LambdaSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
};

/// Sum of L_i^T N2^T A_i N2 L_i and the matching right-hand side, reduced in
/// subdomain order. `dirichlet` holds p^ pairings on each subdomain's
/// Dirichlet DOFs, `neumann` the flux data per lambda.
LambdaSystem assemble_lambda_system(const TraceConnectivity& tc,
                                    const std::vector<LocalOperators>& ops,
                                    const std::vector<Eigen::VectorXd>& dirichlet,
                                    const Eigen::VectorXd& neumann);

/// Recovers the subdomain flux and pressure from the full boundary trace g.
void recover_local(const LocalOperators& op, const Eigen::VectorXd& trace, BlockSolution& out);

/// Domain-decomposition (hybrid) solve.
DarcySolution solve_dd(const DarcyProblem& problem, const SolverOptions& options);

/// Single-domain mixed solve. Throws kOutOfMemory when the estimated storage
/// exceeds options.memory_budget.
DarcySolution solve_continuous(const DarcyProblem& problem, const SolverOptions& options);

/// Estimated stored entries of each formulation, used for the budget check.
double estimate_continuous_entries(const MeshSpec& spec);
double estimate_dd_entries(const MeshSpec& spec);

// Global views of a solution for comparisons between formulations.
// Fluxes in the global face orientation, one per fine face of the mesh.
Eigen::VectorXd global_flux(const DarcySolution& s);
// Dual pressure coefficients per fine cell of the mesh.
Eigen::VectorXd global_pressure(const DarcySolution& s);
// Largest mismatch between the two sides of interface fluxes (DD only):
// |u_i . n_i + u_j . n_j|.
double interface_flux_jump(const DarcySolution& s);

}  // namespace darcy

#endif  // DARCY_SOLVER_HPP
