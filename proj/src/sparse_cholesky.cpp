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

#include "darcy/sparse_cholesky.hpp"

#include "darcy/error.hpp"

#include <Eigen/CholmodSupport>

namespace darcy {

struct SparseCholesky::Impl {
  mutable Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>, Eigen::Lower> llt;
};

SparseCholesky::SparseCholesky() : impl_(std::make_unique<Impl>()) {}
SparseCholesky::~SparseCholesky() = default;
SparseCholesky::SparseCholesky(SparseCholesky&&) noexcept = default;
SparseCholesky& SparseCholesky::operator=(SparseCholesky&&) noexcept = default;

void SparseCholesky::compute(const Eigen::SparseMatrix<double>& a, const std::string& what) {
  if (a.rows() != a.cols()) fail(ErrorCategory::kSolver, what + ": matrix not square");
  rows_ = a.rows();
  impl_->llt.compute(a);
  if (impl_->llt.info() != Eigen::Success)
    fail(ErrorCategory::kSolver, what + ": Cholesky failed (not positive definite)");
}

Eigen::VectorXd SparseCholesky::solve(const Eigen::VectorXd& b) const {
  return impl_->llt.solve(b);
}

Eigen::MatrixXd SparseCholesky::solve(const Eigen::MatrixXd& b) const {
  return impl_->llt.solve(b);
}

double SparseCholesky::factor_entries() const {
  return rows_ ? impl_->llt.cholmod().lnz : 0.0;
}

}  // namespace darcy
