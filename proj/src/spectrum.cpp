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

#include "darcy/spectrum.hpp"

#include "darcy/error.hpp"
#include "darcy/sparse_cholesky.hpp"

#include <cmath>
#include <random>

namespace darcy {

double lanczos_largest(const MatVec& apply, Eigen::Index n, const ConditionOptions& opt) {
  if (n <= 0) fail(ErrorCategory::kInvalidArgument, "empty operator");
  std::mt19937_64 rng(opt.seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  v.normalize();

  const int m = static_cast<int>(std::min<Eigen::Index>(opt.max_iterations, n));
  Eigen::MatrixXd basis(n, m);
  std::vector<double> alpha, beta;
  Eigen::VectorXd w(n);
  double previous = 0.0;
  for (int k = 0; k < m; ++k) {
    basis.col(k) = v;
    apply(v, w);
    const double a = v.dot(w);
    alpha.push_back(a);
    // Full reorthogonalization (twice) against the Krylov basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = basis.leftCols(k + 1).transpose() * w;
      w -= basis.leftCols(k + 1) * c;
    }
    const double b = w.norm();

    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k + 1);
    Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = eig.eigenvalues()[k];
    // Ritz residual of the top pair: |beta_k * last component of its vector|.
    const double residual = b * std::abs(eig.eigenvectors()(k, k));
    previous = theta;
    if (residual <= opt.tolerance * std::abs(theta)) return theta;
    beta.push_back(b);
    v = w / b;
  }
  return previous;
}

double condition_estimate(const Eigen::MatrixXd& a, const ConditionOptions& opt) {
  if (a.rows() != a.cols() || a.rows() == 0)
    fail(ErrorCategory::kInvalidArgument, "condition estimate needs a nonempty square matrix");
  if (a.rows() <= opt.dense_limit) {
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
    if (ev[0] <= 0.0) fail(ErrorCategory::kSolver, "matrix is not positive definite");
    return ev[ev.size() - 1] / ev[0];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) fail(ErrorCategory::kSolver, "matrix is not positive definite");
  const double hi = lanczos_largest(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = a * x; }, a.rows(), opt);
  const double inv = lanczos_largest(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = llt.solve(x); }, a.rows(), opt);
  return hi * inv;
}

double condition_estimate(const Eigen::SparseMatrix<double>& a, const ConditionOptions& opt) {
  if (a.rows() != a.cols() || a.rows() == 0)
    fail(ErrorCategory::kInvalidArgument, "condition estimate needs a nonempty square matrix");
  if (a.rows() <= opt.dense_limit) return condition_estimate(Eigen::MatrixXd(a), opt);
  SparseCholesky chol;
  chol.compute(a, "condition estimate");
  const double hi = lanczos_largest(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; }, a.rows(), opt);
  const double inv = lanczos_largest(
      [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = chol.solve(x); }, a.rows(), opt);
  return hi * inv;
}

}  // namespace darcy
