#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rnkit/quadrature.hpp"

namespace rnkit {
namespace {

double apply(const QuadratureRule& q, double (*f)(double)) {
  double s = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

TEST(GaussHermite, Moments) {
  const double root_pi = std::sqrt(std::numbers::pi);
  for (int n : {4, 16, 40, 80}) {
    const QuadratureRule q = gauss_hermite(n);
    ASSERT_EQ(q.nodes.size(), static_cast<size_t>(n));
    EXPECT_NEAR(apply(q, [](double) { return 1.0; }), root_pi, 1e-13) << n;
    EXPECT_NEAR(apply(q, [](double x) { return x * x * x * x; }), 3.0 * root_pi / 4.0, 1e-13) << n;
    EXPECT_NEAR(apply(q, [](double x) { return x * x * x; }), 0.0, 1e-13) << n;
  }
  // int e^{-x^2} cos(x) = sqrt(pi) e^{-1/4}
  EXPECT_NEAR(apply(gauss_hermite(30), [](double x) { return std::cos(x); }), root_pi * std::exp(-0.25), 1e-14);
}

TEST(GaussLegendre, ExactForDegree2nMinus1) {
  const QuadratureRule q = gauss_legendre(5, -1.0, 2.0);
  double s = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], 9);
  EXPECT_NEAR(s, (std::pow(2.0, 10) - 1.0) / 10.0, 1e-12);
  double w = 0.0;
  for (double x : q.weights) w += x;
  EXPECT_NEAR(w, 3.0, 1e-14);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}

}  // namespace
}  // namespace rnkit
