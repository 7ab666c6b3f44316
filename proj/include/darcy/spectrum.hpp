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

#ifndef DARCY_SPECTRUM_HPP
#define DARCY_SPECTRUM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>

namespace darcy {

struct ConditionOptions {
  Eigen::Index dense_limit = 2000;  // exact eigenvalues up to this size
  double tolerance = 1e-3;          // relative tolerance of the Lanczos estimate
  int max_iterations = 400;
  std::uint64_t seed = 0x5eed;
};

using MatVec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Largest eigenvalue of a symmetric operator by Lanczos with full
/// reorthogonalization, started from a seeded random vector.
double lanczos_largest(const MatVec& apply, Eigen::Index n, const ConditionOptions& opt);

/// 2-norm condition number of an SPD matrix.
double condition_estimate(const Eigen::MatrixXd& a, const ConditionOptions& opt = {});
double condition_estimate(const Eigen::SparseMatrix<double>& a, const ConditionOptions& opt = {});

}  // namespace darcy

#endif  // DARCY_SPECTRUM_HPP
