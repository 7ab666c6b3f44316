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

#include "darcy/error.hpp"
#include "darcy/parallel.hpp"
#include "darcy/solver.hpp"
#include "darcy/sparse_cholesky.hpp"

#include <chrono>
#include <cmath>

namespace darcy {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

BlockTopology BlockTopology::make(int order, Int3 elements) {
  BlockTopology t;
  t.divergence = build_divergence(order, elements).to_sparse();
  t.inclusion = build_inclusion(order, elements).to_sparse();
  return t;
}

Eigen::VectorXd LocalOperators::apply_a_trace(const Eigen::VectorXd& g) const {
  const Eigen::VectorXd wg = w * g;
  return wg - x * schur.solve(trace_x.transpose() * g);
}

double LocalOperators::stored_entries() const {
  return static_cast<double>(x.size() + w.size() + trace_x.size() + condensed.size() + a.size() +
                             source.size()) +
         static_cast<double>(schur.matrixLLT().size());
}

LocalOperators build_local_operators(const BlockTopology& topo, const Eigen::MatrixXd& mass,
                                     const Eigen::VectorXd& source, int subdomain,
                                     bool materialize) {
  LocalOperators op;
  op.source = source;
  Eigen::LLT<Eigen::MatrixXd> m(mass);
  if (m.info() != Eigen::Success) {
    fail(ErrorCategory::kSolver,
         "face mass of subdomain " + std::to_string(subdomain) + " is not positive definite");
  }
  const Eigen::MatrixXd et = Eigen::MatrixXd(topo.divergence.transpose());
  op.x = m.solve(et);
  op.w = m.solve(Eigen::MatrixXd(topo.inclusion));
  const Eigen::MatrixXd s = topo.divergence * op.x;
  op.schur.compute(0.5 * (s + s.transpose()));
  if (op.schur.info() != Eigen::Success) {
    fail(ErrorCategory::kSolver, "pressure Schur complement of subdomain " +
                                     std::to_string(subdomain) + " is not positive definite");
  }
  op.trace_x = topo.inclusion.transpose() * op.x;
  const Eigen::MatrixXd ntw = topo.inclusion.transpose() * op.w;
  op.condensed = ntw - op.trace_x * op.schur.solve(op.trace_x.transpose());
  op.condensed = 0.5 * (op.condensed + op.condensed.transpose()).eval();
  if (materialize) {
    const Eigen::MatrixXd minv = m.solve(Eigen::MatrixXd::Identity(mass.rows(), mass.cols()));
    op.a = minv - op.x * op.schur.solve(op.x.transpose());
  }
  return op;
}

LambdaSystem assemble_lambda_system(const TraceConnectivity& tc,
                                    const std::vector<LocalOperators>& ops,
                                    const std::vector<Eigen::VectorXd>& dirichlet,
                                    const Eigen::VectorXd& neumann) {
  LambdaSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(tc.num_lambda);
  size_t count = 0;
  for (size_t s = 0; s < ops.size(); ++s) {
    const Index nb = tc.subdomains[s].boundary_count();
    count += static_cast<size_t>(nb) * (nb + 1) / 2;
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(count);
  for (size_t s = 0; s < ops.size(); ++s) {
    const SubdomainTrace& st = tc.subdomains[s];
    const LocalOperators& op = ops[s];
    const Index nb = st.boundary_count();
    for (Index b = 0; b < nb; ++b) {
      const Index lb = st.lambda[b];
      if (lb < 0) continue;
      for (Index a = 0; a < nb; ++a) {
        const Index la = st.lambda[a];
        if (la < lb) continue;
        trip.emplace_back(la, lb, op.condensed(a, b));
      }
    }
    // r = N2^T (M^-1 E^T S^-1 f - A N2 p^_D)
    Eigen::VectorXd gd = Eigen::VectorXd::Zero(nb);
    for (size_t k = 0; k < st.dirichlet.size(); ++k) gd[st.dirichlet[k]] = dirichlet[s][k];
    const Eigen::VectorXd r = op.trace_x * op.schur.solve(op.source) - op.condensed * gd;
    for (Index b = 0; b < nb; ++b)
      if (st.lambda[b] >= 0) sys.rhs[st.lambda[b]] += r[b];
  }
  sys.rhs -= neumann;
  Eigen::SparseMatrix<double> lower(tc.num_lambda, tc.num_lambda);
  lower.setFromTriplets(trip.begin(), trip.end());
  sys.matrix = lower.selfadjointView<Eigen::Lower>();
  return sys;
}

void recover_local(const LocalOperators& op, const Eigen::VectorXd& trace, BlockSolution& out) {
  out.trace = trace;
  out.pressure = op.schur.solve(op.source + op.trace_x.transpose() * trace);
  out.flux = op.x * out.pressure - op.w * trace;
  out.source = op.source;
}

double estimate_dd_entries(const MeshSpec& spec) {
  const StructuredGrid block(spec.per_subdomain * spec.order);
  const double nu = static_cast<double>(block.num_faces());
  const double np = static_cast<double>(block.num_cells());
  const double nb = static_cast<double>(block.num_boundary_faces());
  const double per = nu * np + nu * nb + nb * np + np * np + nb * nb + np;
  // The lambda matrix holds at most nb^2 entries per subdomain.
  return static_cast<double>(spec.subdomains.product()) * (per + nb * nb);
}

namespace {

double conservation_error(const Eigen::SparseMatrix<double>& e, const BlockSolution& b) {
  if (b.source.size() == 0) return 0.0;
  return (e * b.flux - b.source).lpNorm<Eigen::Infinity>();
}

}  // namespace

DarcySolution solve_dd(const DarcyProblem& problem, const SolverOptions& options) {
  const auto t_start = Clock::now();
  const MeshSpec& spec = problem.spec;
  const int order = spec.order;
  if (problem.bc.dirichlet_count() == 0) {
    fail(ErrorCategory::kSolver,
         "constraint deficiency: no Dirichlet boundary, pressure defined up to a constant");
  }
  const SubdomainPartition partition = build_partition(spec, problem.bc);
  const double estimate = estimate_dd_entries(spec);
  if (estimate > options.memory_budget) {
    fail(ErrorCategory::kOutOfMemory,
         "domain decomposition needs ~" + std::to_string(static_cast<long long>(estimate)) +
             " stored entries, budget " +
             std::to_string(static_cast<long long>(options.memory_budget)));
  }
  const TraceConnectivity tc = build_trace_connectivity(partition, order);
  const BlockTopology topo = BlockTopology::make(order, spec.per_subdomain);
  const int points = order + 4;
  const size_t n_sub = partition.subdomains.size();

  std::vector<LocalOperators> ops(n_sub);
  std::vector<Eigen::VectorXd> dirichlet(n_sub);
  std::vector<Eigen::VectorXd> neumann_local(n_sub);
  parallel_for(static_cast<Index>(n_sub), options.threads, [&](Index s) {
    BlockMatrices bm;
    bm.layout = BlockLayout{order, partition.subdomains[s].origin, spec.per_subdomain};
    assemble_face_mass(spec, *problem.permeability, problem.assembly, false, bm);
    assemble_volume_terms(spec, problem.source ? &problem.source : nullptr, problem.assembly, bm);
    ops[s] = build_local_operators(topo, bm.face_mass, bm.rhs_volume, static_cast<int>(s),
                                   options.materialize_local);
    ops[s].layout = bm.layout;
    const SubdomainTrace& st = tc.subdomains[s];
    dirichlet[s] = problem.pressure
                       ? block_dirichlet_pairing(spec, bm.layout, problem.pressure, st.dirichlet, points)
                       : Eigen::VectorXd::Zero(st.dirichlet.size());
    neumann_local[s] = problem.flux
                           ? block_neumann_flux(spec, bm.layout, problem.flux, st.neumann, points)
                           : Eigen::VectorXd::Zero(st.neumann.size());
  });
  Eigen::VectorXd neumann = Eigen::VectorXd::Zero(tc.num_lambda);
  for (size_t s = 0; s < n_sub; ++s) {
    const SubdomainTrace& st = tc.subdomains[s];
    for (size_t k = 0; k < st.neumann.size(); ++k)
      neumann[st.lambda[st.neumann[k]]] = neumann_local[s][k];
  }

  DarcySolution sol;
  sol.formulation = Formulation::kDomainDecomposition;
  sol.spec = spec;
  SolveReport& rep = sol.report;
  rep.setup_s = seconds_since(t_start);

  const auto t_lambda = Clock::now();
  const LambdaSystem sys = assemble_lambda_system(tc, ops, dirichlet, neumann);
  SparseCholesky chol;
  chol.compute(sys.matrix, "lambda system");
  sol.lambda = chol.solve(sys.rhs);
  rep.lambda_s = seconds_since(t_lambda);
  const double rhs_norm = sys.rhs.norm();
  rep.lambda_residual =
      rhs_norm > 0.0 ? (sys.matrix * sol.lambda - sys.rhs).norm() / rhs_norm : 0.0;

  const auto t_recover = Clock::now();
  sol.blocks.resize(n_sub);
  parallel_for(static_cast<Index>(n_sub), options.threads, [&](Index s) {
    const SubdomainTrace& st = tc.subdomains[s];
    Eigen::VectorXd g(st.boundary_count());
    for (Index b = 0; b < st.boundary_count(); ++b)
      g[b] = st.lambda[b] >= 0 ? sol.lambda[st.lambda[b]] : 0.0;
    for (size_t k = 0; k < st.dirichlet.size(); ++k) g[st.dirichlet[k]] = dirichlet[s][k];
    sol.blocks[s].layout = ops[s].layout;
    recover_local(ops[s], g, sol.blocks[s]);
  });
  rep.recover_s = seconds_since(t_recover);
  rep.total_s = seconds_since(t_start);

  for (size_t s = 0; s < n_sub; ++s) {
    rep.stored_entries += ops[s].stored_entries();
    rep.conservation = std::max(rep.conservation, conservation_error(topo.divergence, sol.blocks[s]));
  }
  rep.stored_entries += static_cast<double>(sys.matrix.nonZeros()) + chol.factor_entries();
  rep.dof_u = static_cast<Index>(n_sub) * topo.divergence.cols();
  rep.dof_p = static_cast<Index>(n_sub) * topo.divergence.rows();
  rep.dof_lambda = tc.num_lambda;
  if (options.condition) rep.cond_lambda = condition_estimate(sys.matrix, options.condition_options);
  return sol;
}

Eigen::VectorXd global_flux(const DarcySolution& s) {
  const StructuredGrid fine(s.spec.elements * s.spec.order);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(fine.num_faces());
  for (const BlockSolution& b : s.blocks) {
    const StructuredGrid block = b.layout.fine();
    const Int3 origin = b.layout.origin * b.layout.order;
    for (Index f = 0; f < block.num_faces(); ++f) {
      int axis;
      Int3 c;
      block.face_coords(f, axis, c);
      out[fine.face_index(axis, origin + c)] = b.flux[f];
    }
  }
  return out;
}

Eigen::VectorXd global_pressure(const DarcySolution& s) {
  const StructuredGrid fine(s.spec.elements * s.spec.order);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(fine.num_cells());
  for (const BlockSolution& b : s.blocks) {
    const StructuredGrid block = b.layout.fine();
    const Int3 origin = b.layout.origin * b.layout.order;
    for (Index c = 0; c < block.num_cells(); ++c)
      out[fine.cell_index(origin + block.cell_coords(c))] = b.pressure[c];
  }
  return out;
}

double interface_flux_jump(const DarcySolution& s) {
  const StructuredGrid fine(s.spec.elements * s.spec.order);
  std::vector<double> first(fine.num_faces(), std::nan(""));
  double jump = 0.0;
  for (const BlockSolution& b : s.blocks) {
    const StructuredGrid block = b.layout.fine();
    const Int3 origin = b.layout.origin * b.layout.order;
    for (int side = 0; side < 6; ++side) {
      for (Index k = 0; k < block.num_side_faces(side); ++k) {
        const Index f = block.side_face(side, k);
        int axis;
        Int3 c;
        block.face_coords(f, axis, c);
        const Index g = fine.face_index(axis, origin + c);
        if (std::isnan(first[g])) {
          first[g] = b.flux[f];
        } else {
          // Both blocks store the flux in the global orientation, so the
          // outward fluxes sum to zero exactly when the values agree.
          jump = std::max(jump, std::abs(first[g] - b.flux[f]));
        }
      }
    }
  }
  return jump;
}

}  // namespace darcy
