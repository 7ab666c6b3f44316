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

#ifndef DARCY_SPARSE_CHOLESKY_HPP
#define DARCY_SPARSE_CHOLESKY_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <string>

namespace darcy {

// Sparse SPD factorization backed by CHOLMOD (supernodal LL^T).
class SparseCholesky {
 public:
  SparseCholesky();
  ~SparseCholesky();
  SparseCholesky(SparseCholesky&&) noexcept;
  SparseCholesky& operator=(SparseCholesky&&) noexcept;

  /// Factorizes A (lower triangle used). Throws kSolver with `what` in the
  /// message if A is not positive definite.
  void compute(const Eigen::SparseMatrix<double>& a, const std::string& what = "matrix");

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

  Eigen::Index rows() const { return rows_; }
  // Stored entries of the factor.
  double factor_entries() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Eigen::Index rows_ = 0;
};

}  // namespace darcy

#endif  // DARCY_SPARSE_CHOLESKY_HPP
