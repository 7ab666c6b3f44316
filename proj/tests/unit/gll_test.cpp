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
#include "darcy/gll.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace darcy {
namespace {

// Exact integral of x^k over [-1, 1].
double monomial_integral(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

double integrate(const Quadrature1D& q, int k) {
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
  return s;
}

TEST(GllTest, LowOrderClosedForms) {
  const Quadrature1D q1 = gll_nodes_weights(1);
  ASSERT_EQ(q1.size(), 2);
  EXPECT_DOUBLE_EQ(q1.nodes[0], -1.0);
  EXPECT_DOUBLE_EQ(q1.nodes[1], 1.0);
  EXPECT_DOUBLE_EQ(q1.weights[0], 1.0);
  EXPECT_DOUBLE_EQ(q1.weights[1], 1.0);

  const Quadrature1D q2 = gll_nodes_weights(2);
  ASSERT_EQ(q2.size(), 3);
  EXPECT_NEAR(q2.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(q2.weights[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(q2.weights[1], 4.0 / 3.0, 1e-15);

  const Quadrature1D q3 = gll_nodes_weights(3);
  EXPECT_NEAR(q3.nodes[1], -1.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(q3.weights[0], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(q3.weights[1], 5.0 / 6.0, 1e-15);
}

TEST(GllTest, ExactForDegreeTwoNMinusOne) {
  for (int n = 1; n <= 12; ++n) {
    const Quadrature1D q = gll_nodes_weights(n);
    for (int k = 0; k <= 2 * n - 1; ++k)
      EXPECT_NEAR(integrate(q, k), monomial_integral(k), 1e-13) << "N=" << n << " k=" << k;
  }
}

TEST(GllTest, NodesSymmetricAndSorted) {
  for (int n = 1; n <= 12; ++n) {
    const Quadrature1D q = gll_nodes_weights(n);
    for (int i = 0; i <= n; ++i) {
      EXPECT_NEAR(q.nodes[i], -q.nodes[n - i], 1e-14);
      EXPECT_NEAR(q.weights[i], q.weights[n - i], 1e-14);
      if (i > 0) EXPECT_LT(q.nodes[i - 1], q.nodes[i]);
    }
  }
}

TEST(GllTest, GaussLegendreExactForDegreeTwoNMinusOne) {
  for (int n = 1; n <= 12; ++n) {
    const Quadrature1D q = gauss_legendre(n);
    ASSERT_EQ(q.size(), n);
    for (int k = 0; k <= 2 * n - 1; ++k)
      EXPECT_NEAR(integrate(q, k), monomial_integral(k), 1e-13) << "n=" << n << " k=" << k;
  }
}

TEST(GllTest, LegendreRecurrence) {
  double v = 0.0, d = 0.0;
  legendre(2, 0.3, v, d);
  EXPECT_NEAR(v, 0.5 * (3 * 0.09 - 1), 1e-15);
  EXPECT_NEAR(d, 3 * 0.3, 1e-15);
  legendre(3, -0.7, v, d);
  EXPECT_NEAR(v, 0.5 * (5 * std::pow(-0.7, 3) - 3 * -0.7), 1e-15);
  EXPECT_NEAR(d, 0.5 * (15 * 0.49 - 3), 1e-14);
}

TEST(GllTest, InvalidOrdersThrow) {
  try {
    gll_nodes_weights(0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kInvalidArgument);
  }
  EXPECT_THROW(gauss_legendre(0), Error);
}

TEST(SpectralBasis1DTest, LagrangeIsNodal) {
  for (int n = 1; n <= 8; ++n) {
    const SpectralBasis1D b(n);
    std::vector<double> l(n + 1);
    for (int j = 0; j <= n; ++j) {
      b.lagrange(b.nodes()[j], l.data());
      for (int i = 0; i <= n; ++i) EXPECT_NEAR(l[i], i == j ? 1.0 : 0.0, 1e-13);
    }
  }
}

TEST(SpectralBasis1DTest, LagrangeDerivativeMatchesDifferences) {
  const SpectralBasis1D b(5);
  const double h = 1e-6;
  std::vector<double> d(6), lp(6), lm(6);
  for (double x : {-0.83, -0.1, 0.42, 0.97}) {
    b.lagrange_derivative(x, d.data());
    b.lagrange(x + h, lp.data());
    b.lagrange(x - h, lm.data());
    for (int i = 0; i <= 5; ++i) EXPECT_NEAR(d[i], (lp[i] - lm[i]) / (2 * h), 1e-7);
  }
}

TEST(SpectralBasis1DTest, EdgeFunctionsHistopolate) {
  for (int n = 1; n <= 8; ++n) {
    const SpectralBasis1D b(n);
    const Quadrature1D g = gauss_legendre(n + 2);
    std::vector<double> e(n);
    for (int k = 0; k < n; ++k) {
      const double a = b.nodes()[k], c = b.nodes()[k + 1];
      std::vector<double> integral(n, 0.0);
      for (int q = 0; q < g.size(); ++q) {
        const double x = 0.5 * (a + c) + 0.5 * (c - a) * g.nodes[q];
        b.edge(x, e.data());
        for (int m = 0; m < n; ++m) integral[m] += 0.5 * (c - a) * g.weights[q] * e[m];
      }
      for (int m = 0; m < n; ++m)
        EXPECT_NEAR(integral[m], m == k ? 1.0 : 0.0, 1e-12) << "N=" << n << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace darcy
