#pragma once

// Reference computations that avoid the library's code paths: dense
// assembly, Taylor exponentials, direct trapezoid integrals, closed forms.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// exp(A) by scaling and squaring with a degree-18 Taylor polynomial.
inline Matrix expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale /= 2.0;
    ++squarings;
  }
  const Matrix x = a * scale;
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// h^z for a Hermitian positive definite matrix, via the self-adjoint solver.
inline Matrix hpow(const Matrix& h, Complex z) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd d(h.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(z * std::log(es.eigenvalues()(i)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

/// Composite trapezoid rule on [a, b] with m panels.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = 0.5 * (f(a) + f(b));
  for (int k = 1; k < m; ++k) s += f(a + k * h);
  return s * h;
}

inline double alpha(int n) { return 2.0 * n * n / (std::tgamma(0.5) * std::tgamma(0.25)); }

/// Scalar smearing factor alpha_n * int exp(-n^2 x^2) cos(x a) dx * int exp(-n^4 y^4) cos(y b) dy
/// for lambda = e^a, delta = e^b. The Gaussian integral is closed form; the
/// quartic one uses a trapezoid rule, spectrally accurate for this integrand.
inline double smear_scalar(int n, double log_lambda, double log_delta) {
  const double gauss = std::sqrt(std::numbers::pi) / n * std::exp(-log_lambda * log_lambda / (4.0 * n * n));
  const double quartic = trapezoid(
      [&](double y) { return std::exp(-std::pow(n * y, 4)) * std::cos(y * log_delta); }, -6.0 / n, 6.0 / n, 4000);
  return alpha(n) * gauss * quartic;
}

/// Row-major dense matrix of xi -> L xi R on an n x n block.
inline Matrix dense_sandwich(const Matrix& l, const Matrix& r) {
  const Eigen::Index n = l.rows();
  Matrix m(n * n, n * n);
  for (Eigen::Index c = 0; c < n * n; ++c) {
    Matrix e = Matrix::Zero(n, n);
    e(c / n, c % n) = 1.0;
    const Matrix y = l * e * r;
    for (Eigen::Index k = 0; k < n * n; ++k) m(k, c) = y(k / n, k % n);
  }
  return m;
}

/// Largest singular value from the dense Hermitian square.
inline double opnorm(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a);
  return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace oracle
