#include "rnkit/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rnkit/errors.hpp"

namespace rnkit {

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw InvalidArgument("gauss_hermite: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  if (es.info() != Eigen::Success) throw NumericalFailure("gauss_hermite: eigensolver failed");
  QuadratureRule rule;
  const double mass = std::sqrt(std::numbers::pi);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.nodes.push_back(es.eigenvalues()(k));
    rule.weights.push_back(mass * v0 * v0);
  }
  // enforce exact symmetry of the rule
  for (int k = 0; k < n / 2; ++k) {
    const int m = n - 1 - k;
    const double x = (rule.nodes[static_cast<size_t>(m)] - rule.nodes[static_cast<size_t>(k)]) / 2.0;
    const double w = (rule.weights[static_cast<size_t>(m)] + rule.weights[static_cast<size_t>(k)]) / 2.0;
    rule.nodes[static_cast<size_t>(k)] = -x;
    rule.nodes[static_cast<size_t>(m)] = x;
    rule.weights[static_cast<size_t>(k)] = rule.weights[static_cast<size_t>(m)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  if (!(b > a)) throw InvalidArgument("gauss_legendre: empty interval");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double mid = (a + b) / 2.0;
  const double half = (b - a) / 2.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<size_t>(i)] = mid - half * x;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = mid + half * x;
    rule.weights[static_cast<size_t>(i)] = rule.weights[static_cast<size_t>(n - 1 - i)] = half * w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = mid;
  return rule;
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

}  // namespace rnkit
