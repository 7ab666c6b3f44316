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
#include "darcy/solver.hpp"
#include "darcy/sparse_cholesky.hpp"

#include <chrono>

namespace darcy {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Keeps rows/cols listed in `keep` (new index = position in keep).
Eigen::SparseMatrix<double> select(const Eigen::SparseMatrix<double>& a,
                                   const std::vector<Index>& row_map, Index rows,
                                   const std::vector<Index>& col_map, Index cols) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.nonZeros());
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) {
      const Index r = row_map[it.row()], c = col_map[it.col()];
      if (r >= 0 && c >= 0) t.emplace_back(r, c, it.value());
    }
  Eigen::SparseMatrix<double> out(rows, cols);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

double estimate_continuous_entries(const MeshSpec& spec) {
  const StructuredGrid fine(spec.elements * spec.order);
  const ElementBasis basis(spec.order);
  const double np = static_cast<double>(fine.num_cells());
  const double mass = static_cast<double>(spec.elements.product()) * basis.face_count() *
                      basis.face_count();
  // Dense pressure Schur complement plus the mass matrix and (roughly) its factor.
  return np * np + 3.0 * mass;
}

DarcySolution solve_continuous(const DarcyProblem& problem, const SolverOptions& options) {
  const auto t_start = Clock::now();
  const MeshSpec& spec = problem.spec;
  spec.validate();
  if (problem.bc.dirichlet_count() == 0) {
    fail(ErrorCategory::kSolver,
         "constraint deficiency: no Dirichlet boundary, pressure defined up to a constant");
  }
  for (int s = 0; s < 6; ++s)
    if (problem.bc.sides[s] == BcType::kUnassigned)
      fail(ErrorCategory::kSpec, "boundary side " + std::to_string(s) + " has no condition");
  const double estimate = estimate_continuous_entries(spec);
  if (estimate > options.memory_budget) {
    fail(ErrorCategory::kOutOfMemory,
         "continuous formulation needs ~" + std::to_string(static_cast<long long>(estimate)) +
             " stored entries, budget " +
             std::to_string(static_cast<long long>(options.memory_budget)));
  }

  const int order = spec.order;
  BlockMatrices bm;
  bm.layout = BlockLayout{order, Int3{0, 0, 0}, spec.elements};
  assemble_face_mass(spec, *problem.permeability, problem.assembly, true, bm);
  assemble_volume_terms(spec, problem.source ? &problem.source : nullptr, problem.assembly, bm);
  const StructuredGrid fine = bm.layout.fine();
  const Eigen::SparseMatrix<double> e = build_divergence(fine).to_sparse();
  const IncidenceMatrix n2 = build_inclusion(fine);

  // Boundary DOFs: Dirichlet data pairings and strongly imposed Neumann fluxes.
  const Index nb = fine.num_boundary_faces();
  std::vector<Index> dirichlet_dofs, neumann_dofs;
  for (Index b = 0; b < nb; ++b) {
    const int side = locate_boundary_dof(order, spec.elements, b).side;
    (problem.bc.sides[side] == BcType::kDirichlet ? dirichlet_dofs : neumann_dofs).push_back(b);
  }
  const int points = order + 4;
  const Eigen::VectorXd gd =
      problem.pressure ? block_dirichlet_pairing(spec, bm.layout, problem.pressure, dirichlet_dofs, points)
                       : Eigen::VectorXd::Zero(dirichlet_dofs.size());
  const Eigen::VectorXd bn =
      problem.flux ? block_neumann_flux(spec, bm.layout, problem.flux, neumann_dofs, points)
                   : Eigen::VectorXd::Zero(neumann_dofs.size());

  const Index nu = fine.num_faces();
  const Index np = fine.num_cells();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(nu);
  Eigen::VectorXd trace = Eigen::VectorXd::Zero(nb);
  std::vector<int> boundary_sign(nb), boundary_face(nb);
  for (const auto& entry : n2.entries()) {
    boundary_face[entry.col] = static_cast<int>(entry.row);
    boundary_sign[entry.col] = entry.value;
  }
  std::vector<char> fixed(nu, 0);
  for (size_t k = 0; k < neumann_dofs.size(); ++k) {
    const Index b = neumann_dofs[k];
    u[boundary_face[b]] = boundary_sign[b] * bn[k];
    fixed[boundary_face[b]] = 1;
  }
  // N2 g_D as a face vector.
  Eigen::VectorXd n2g = Eigen::VectorXd::Zero(nu);
  for (size_t k = 0; k < dirichlet_dofs.size(); ++k) {
    const Index b = dirichlet_dofs[k];
    n2g[boundary_face[b]] += boundary_sign[b] * gd[k];
    trace[b] = gd[k];
  }

  std::vector<Index> free_map(nu, -1), fixed_map(nu, -1), cell_map(np);
  Index n_free = 0, n_fixed = 0;
  for (Index f = 0; f < nu; ++f) (fixed[f] ? fixed_map[f] = n_fixed++ : free_map[f] = n_free++);
  for (Index c = 0; c < np; ++c) cell_map[c] = c;

  const Eigen::SparseMatrix<double>& m = bm.face_mass_sparse;
  const Eigen::SparseMatrix<double> m_ff = select(m, free_map, n_free, free_map, n_free);
  const Eigen::SparseMatrix<double> m_fn = select(m, free_map, n_free, fixed_map, n_fixed);
  const Eigen::SparseMatrix<double> e_f = select(e, cell_map, np, free_map, n_free);
  const Eigen::SparseMatrix<double> e_n = select(e, cell_map, np, fixed_map, n_fixed);
  Eigen::VectorXd u_n(n_fixed), n2g_f(n_free);
  for (Index f = 0; f < nu; ++f) {
    if (fixed[f]) u_n[fixed_map[f]] = u[f];
    else n2g_f[free_map[f]] = n2g[f];
  }

  SparseCholesky mass_factor;
  mass_factor.compute(m_ff, "face mass");

  // Dense pressure Schur complement E_F M_FF^-1 E_F^T, formed in column blocks.
  Eigen::MatrixXd s(np, np);
  const Eigen::SparseMatrix<double> e_ft = e_f.transpose();
  const Index block = 256;
  for (Index c0 = 0; c0 < np; c0 += block) {
    const Index w = std::min(block, np - c0);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd(e_ft.middleCols(c0, w));
    const Eigen::MatrixXd y = mass_factor.solve(rhs);
    s.middleCols(c0, w) = e_f * y;
  }
  s = 0.5 * (s + s.transpose()).eval();

  DarcySolution sol;
  sol.formulation = Formulation::kContinuous;
  sol.spec = spec;
  SolveReport& rep = sol.report;
  rep.setup_s = seconds_since(t_start);

  const auto t_solve = Clock::now();
  Eigen::LLT<Eigen::MatrixXd> schur(s);
  if (schur.info() != Eigen::Success)
    fail(ErrorCategory::kSolver, "pressure Schur complement is not positive definite");
  const Eigen::VectorXd known = n2g_f + m_fn * u_n;
  const Eigen::VectorXd rhs = bm.rhs_volume - e_n * u_n + e_f * mass_factor.solve(known);
  const Eigen::VectorXd p = schur.solve(rhs);
  const Eigen::VectorXd u_f = mass_factor.solve(Eigen::VectorXd(e_ft * p - known));
  rep.lambda_s = seconds_since(t_solve);

  const auto t_recover = Clock::now();
  for (Index f = 0; f < nu; ++f)
    if (!fixed[f]) u[f] = u_f[free_map[f]];
  // Neumann pressure trace from the eliminated rows: g_b = s (E^T p - M u)_f.
  const Eigen::VectorXd residual = e.transpose() * p - m * u;
  for (Index b : neumann_dofs) trace[b] = boundary_sign[b] * residual[boundary_face[b]];
  rep.recover_s = seconds_since(t_recover);
  rep.total_s = seconds_since(t_start);

  BlockSolution out;
  out.layout = bm.layout;
  out.flux = u;
  out.pressure = p;
  out.trace = trace;
  out.source = bm.rhs_volume;
  rep.conservation = (e * u - bm.rhs_volume).lpNorm<Eigen::Infinity>();
  rep.dof_u = nu;
  rep.dof_p = np;
  rep.dof_lambda = 0;
  rep.stored_entries = static_cast<double>(m.nonZeros()) + mass_factor.factor_entries() +
                       static_cast<double>(s.size());
  if (options.condition) {
    rep.cond_pressure_eliminated = condition_estimate(s, options.condition_options);
    if (n_fixed == 0) {
      rep.cond_pressure = rep.cond_pressure_eliminated;
    } else {
      s.resize(0, 0);
      SparseCholesky full_factor;
      full_factor.compute(m, "face mass");
      const Eigen::SparseMatrix<double> et = e.transpose();
      Eigen::MatrixXd s_full(np, np);
      for (Index c0 = 0; c0 < np; c0 += block) {
        const Index w = std::min(block, np - c0);
        s_full.middleCols(c0, w) = e * full_factor.solve(Eigen::MatrixXd(et.middleCols(c0, w)));
      }
      s_full = 0.5 * (s_full + s_full.transpose()).eval();
      rep.cond_pressure = condition_estimate(s_full, options.condition_options);
    }
  }
  sol.blocks.push_back(std::move(out));
  return sol;
}

}  // namespace darcy
