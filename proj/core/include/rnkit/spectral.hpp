#pragma once

// Dense spectral kernels shared by the positive-element calculus.

#include "rnkit/algebra.hpp"

namespace rnkit {

struct HermitianSpectrum {
  Matrix vectors;     // unitary, columns are eigenvectors
  RealVector values;  // ascending
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (a + a*)/2 when its Hermiticity defect is at most tol_herm * max(1, ||a||);
/// a larger defect throws InvalidArgument.
HermitianSpectrum hermitian_eig(const Matrix& a, double tol_herm = 1e-12);

struct GradedSvd {
  Matrix left;           // left singular vectors
  RealVector log_sigma;  // log of the singular values, same column order
  int sweeps = 0;        // worst sweep count over the independent components
};

/// Left singular vectors and log singular values of g, computed by a
/// column-pivoted QR of g* followed by one-sided (Hestenes) Jacobi on R*.
/// Rows of g that decouple (disconnected nonzero pattern) are handled as
/// independent problems. Accurate for graded matrices D1 * W * D2 whose
/// singular values span many orders of magnitude.
GradedSvd graded_left_svd(const Matrix& g);

struct UnitaryLog {
  Matrix generator;  // Hermitian X with u = exp(iX), eigenphases in (-pi, pi]
  double max_phase = 0.0;
};

/// Principal logarithm of a unitary via complex Schur form.
UnitaryLog unitary_log(const Matrix& u);

/// ||u* u - 1||.
double unitarity_defect(const Matrix& u);

/// R factor of the thin QR of [a b] (2x2 upper triangular).
Eigen::Matrix2cd thin_r_factor(const Vector& a, const Vector& b);
/// ||R_X R_Y*||, the norm of X Y* from the R factors of X and Y.
double core_norm(const Eigen::Matrix2cd& rx, const Eigen::Matrix2cd& ry);
/// ||x1 y1* + x2 y2*|| for column vectors, via thin QR of [x1 x2] and [y1 y2].
double rank2_norm(const Vector& x1, const Vector& y1, const Vector& x2, const Vector& y2);

}  // namespace rnkit
