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

#ifndef DARCY_GLL_HPP
#define DARCY_GLL_HPP

#include <vector>

namespace darcy {

struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Lobatto-Legendre rule with `order + 1` points on [-1, 1].
/// Throws ErrorCategory::kInvalidArgument for order < 1.
Quadrature1D gll_nodes_weights(int order);

/// Gauss-Legendre rule with `points` interior points on [-1, 1].
Quadrature1D gauss_legendre(int points);

/// Legendre polynomial P_n and its derivative at x.
void legendre(int n, double x, double& value, double& derivative);

// One-dimensional spectral basis on the GLL nodes of a given order:
// Lagrange polynomials l_0..l_N (nodal) and edge polynomials e_0..e_{N-1}
// (histopolant: the integral of e_m over [x_k, x_{k+1}] is delta_{mk}).
class SpectralBasis1D {
 public:
  explicit SpectralBasis1D(int order);

  int order() const { return order_; }
  const std::vector<double>& nodes() const { return gll_.nodes; }
  const std::vector<double>& weights() const { return gll_.weights; }

  void lagrange(double x, double* values) const;
  void lagrange_derivative(double x, double* values) const;
  // e_m(x) = -sum_{k <= m} l_k'(x), m = 0..N-1.
  void edge(double x, double* values) const;

 private:
  int order_;
  Quadrature1D gll_;
  std::vector<double> barycentric_;
};

}  // namespace darcy

#endif  // DARCY_GLL_HPP
