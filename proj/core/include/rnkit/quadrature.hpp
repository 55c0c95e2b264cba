#pragma once

#include <vector>

namespace rnkit {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line
/// (Golub-Welsch). Weights sum to sqrt(pi).
QuadratureRule gauss_hermite(int n);

/// Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n, double a, double b);

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rnkit
