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

#include "darcy/gll.hpp"

#include "darcy/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace darcy {

void legendre(int n, double x, double& value, double& derivative) {
  double p_prev = 1.0;
  double p = x;
  if (n == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  value = p;
  // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1), with the endpoint limit.
  if (std::abs(std::abs(x) - 1.0) < 1e-15) {
    derivative = 0.5 * n * (n + 1.0) * (x > 0 ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0));
  } else {
    derivative = n * (x * p - p_prev) / (x * x - 1.0);
  }
}

Quadrature1D gll_nodes_weights(int order) {
  if (order < 1) {
    fail(ErrorCategory::kInvalidArgument,
         "GLL order must be >= 1, got " + std::to_string(order));
  }
  const int n = order;
  Quadrature1D q;
  q.nodes.resize(n + 1);
  q.weights.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    // Chebyshev-Gauss-Lobatto start, Newton on (1 - x^2) P_n'(x) via the
    // recurrence-friendly form x - (x P_n - P_{n-1}) / ((n + 1) P_n).
    double x = -std::cos(std::numbers::pi * j / n);
    for (int it = 0; it < 100; ++it) {
      double p_prev = 1.0, p = x;
      for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
      }
      const double dx = (x * p - p_prev) / ((n + 1.0) * p);
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    q.nodes[j] = x;
  }
  q.nodes.front() = -1.0;
  q.nodes.back() = 1.0;
  // Symmetrize against round-off.
  for (int j = 0; j <= n / 2; ++j) {
    const double m = 0.5 * (q.nodes[n - j] - q.nodes[j]);
    q.nodes[j] = -m;
    q.nodes[n - j] = m;
  }
  if (n % 2 == 0) q.nodes[n / 2] = 0.0;
  for (int j = 0; j <= n; ++j) {
    double p, dp;
    legendre(n, q.nodes[j], p, dp);
    q.weights[j] = 2.0 / (n * (n + 1.0) * p * p);
  }
  return q;
}

Quadrature1D gauss_legendre(int points) {
  if (points < 1) {
    fail(ErrorCategory::kInvalidArgument,
         "Gauss-Legendre point count must be >= 1, got " + std::to_string(points));
  }
  const int n = points;
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  for (int i = 0; i < n / 2; ++i) {
    const double m = 0.5 * (q.nodes[n - 1 - i] - q.nodes[i]);
    q.nodes[i] = -m;
    q.nodes[n - 1 - i] = m;
    const double w = 0.5 * (q.weights[i] + q.weights[n - 1 - i]);
    q.weights[i] = q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

SpectralBasis1D::SpectralBasis1D(int order) : order_(order), gll_(gll_nodes_weights(order)) {
  barycentric_.resize(order_ + 1);
  for (int k = 0; k <= order_; ++k) {
    double d = 1.0;
    for (int j = 0; j <= order_; ++j)
      if (j != k) d *= gll_.nodes[k] - gll_.nodes[j];
    barycentric_[k] = 1.0 / d;
  }
}

void SpectralBasis1D::lagrange(double x, double* values) const {
  const auto& xn = gll_.nodes;
  for (int k = 0; k <= order_; ++k) {
    double v = barycentric_[k];
    for (int j = 0; j <= order_; ++j)
      if (j != k) v *= x - xn[j];
    values[k] = v;
  }
}

void SpectralBasis1D::lagrange_derivative(double x, double* values) const {
  const auto& xn = gll_.nodes;
  for (int k = 0; k <= order_; ++k) {
    double sum = 0.0;
    for (int m = 0; m <= order_; ++m) {
      if (m == k) continue;
      double term = 1.0;
      for (int j = 0; j <= order_; ++j)
        if (j != k && j != m) term *= x - xn[j];
      sum += term;
    }
    values[k] = sum * barycentric_[k];
  }
}

void SpectralBasis1D::edge(double x, double* values) const {
  std::vector<double> dl(order_ + 1);
  lagrange_derivative(x, dl.data());
  double acc = 0.0;
  for (int m = 0; m < order_; ++m) {
    acc -= dl[m];
    values[m] = acc;
  }
}

}  // namespace darcy
