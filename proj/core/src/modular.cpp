#include "rnkit/modular.hpp"

#include <algorithm>
#include <cmath>

#include "rnkit/errors.hpp"
#include "rnkit/spectral.hpp"

namespace rnkit {

Superoperator::Superoperator(Element left, Element right, bool antilinear)
    : left_(std::move(left)), right_(std::move(right)), antilinear_(antilinear) {
  require_same_shape(left_, right_, "superoperator");
}

Superoperator Superoperator::identity(const BlockAlgebra& algebra) {
  return Superoperator(algebra.identity(), algebra.identity());
}

Superoperator Superoperator::left_multiplication(const Element& a) {
  return Superoperator(a, algebra_of(a).identity());
}

Superoperator Superoperator::right_multiplication(const Element& a) {
  return Superoperator(algebra_of(a).identity(), a);
}

Superoperator Superoperator::conjugation(const BlockAlgebra& algebra) {
  return Superoperator(algebra.identity(), algebra.identity(), true);
}

Element Superoperator::apply(const Element& xi) const {
  require_same_shape(left_, xi, "superoperator apply");
  return antilinear_ ? left_ * xi.adjoint() * right_ : left_ * xi * right_;
}

Matrix Superoperator::dense() const {
  Eigen::Index total = 0;
  for (const auto& b : left_.blocks()) total += b.size();
  Matrix m = Matrix::Zero(total, total);
  Eigen::Index off = 0;
  for (int k = 0; k < left_.block_count(); ++k) {
    const Matrix& l = left_.block(k);
    const Matrix rt = right_.block(k).transpose();
    const Eigen::Index n = l.rows();
    // row-major coordinates: vec(L X R) = (L kron R^T) vec(X)
    Matrix kron(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) kron.block(i * n, j * n, n, n) = l(i, j) * rt;
    if (antilinear_) {
      // vec(X*) = T conj(vec X) with T the transpose permutation
      Matrix permuted(n * n, n * n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) permuted.col(i * n + j) = kron.col(j * n + i);
      kron = permuted;
    }
    m.block(off, off, n * n, n * n) = kron;
    off += n * n;
  }
  return m;
}

Vector Superoperator::coordinates(const Element& xi) const {
  Eigen::Index total = 0;
  for (const auto& b : xi.blocks()) total += b.size();
  Vector v(total);
  Eigen::Index off = 0;
  for (const auto& b : xi.blocks()) {
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) v(off++) = b(i, j);
  }
  return v;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (!a.antilinear_) return Superoperator(a.left_ * b.left_, b.right_ * a.right_, b.antilinear_);
  // L1 (L2 op(xi) R2)* R1 = (L1 R2*) op(xi)* (L2* R1)
  return Superoperator(a.left_ * b.right_.adjoint(), b.left_.adjoint() * a.right_, !b.antilinear_);
}

double basis_distance(const Superoperator& a, const Superoperator& b) {
  double worst = 0.0;
  for (const auto& e : algebra_of(a.left()).basis()) worst = std::max(worst, (a(e) - b(e)).frobenius_norm());
  return worst;
}

GnsRealization::GnsRealization(Weight weight)
    : weight_(std::move(weight)), root_(weight_.density().power(0.5)) {}

Element GnsRealization::lambda_map(const Element& a) const { return a * root_; }

Superoperator GnsRealization::J() const { return Superoperator::conjugation(algebra()); }

Superoperator GnsRealization::delta_power(Complex z) const {
  const PositiveElement& h = weight_.density();
  return Superoperator(h.power(z), h.power(-z));
}

Superoperator GnsRealization::S() const { return J() * delta_power(0.5); }

Complex gns_inner(const Element& xi, const Element& eta) {
  require_same_shape(xi, eta, "gns inner product");
  Complex s = 0.0;
  for (int k = 0; k < xi.block_count(); ++k) s += eta.block(k).cwiseProduct(xi.block(k).conjugate()).sum();
  return std::conj(s);
}

GnsRealization gns(const Weight& phi) { return GnsRealization(phi); }

Element modular_flow(const Weight& phi, Complex z, const Element& x) {
  const PositiveElement& h = phi.density();
  const Complex iz = Complex(0, 1) * z;
  return h.power(iz) * x * h.power(-iz);
}

double kms_residual(const Weight& phi, const Element& x, const Element& y) {
  return std::abs(phi(x * modular_flow(phi, Complex(0, -1), y)) - phi(y * x));
}

Weight balanced_weight(const Weight& phi, const Weight& psi) {
  if (phi.density().block_dims() != psi.density().block_dims()) {
    throw InvalidArgument("balanced_weight: weights live on different algebras");
  }
  return Weight(block_diagonal(phi.density(), psi.density()));
}

Element connes_cocycle(const Weight& psi, const Weight& phi, double t) {
  if (phi.density().block_dims() != psi.density().block_dims()) {
    throw InvalidArgument("connes_cocycle: weights live on different algebras");
  }
  return psi.density().power(Complex(0, t)) * phi.density().power(Complex(0, -t));
}

double cocycle_chain_residual(const Weight& psi, const Weight& phi, double s, double t) {
  const Element lhs = connes_cocycle(psi, phi, t + s);
  const Element rhs = connes_cocycle(psi, phi, t) * modular_flow(phi, t, connes_cocycle(psi, phi, s));
  return (lhs - rhs).norm();
}

double cocycle_inverse_residual(const Weight& psi, const Weight& phi, double t) {
  const Element lhs = connes_cocycle(psi, phi, -t);
  const Element rhs = modular_flow(phi, -t, connes_cocycle(psi, phi, t).adjoint());
  return (lhs - rhs).norm();
}

double conjugation_gap(const Element& a, const Element& b) {
  require_same_shape(a, b, "conjugation_gap");
  double worst = 0.0;
  for (int k = 0; k < a.block_count(); ++k) {
    const Matrix& ak = a.block(k);
    const Matrix& bk = b.block(k);
    // a e_ij a* - b e_ij b* = X Y* with X = [a_i, -b_i], Y = [a_j, b_j]
    std::vector<Eigen::Matrix2cd> rx;
    std::vector<Eigen::Matrix2cd> ry;
    for (Eigen::Index i = 0; i < ak.cols(); ++i) {
      rx.push_back(thin_r_factor(ak.col(i), -bk.col(i)));
      ry.push_back(thin_r_factor(ak.col(i), bk.col(i)));
    }
    for (const auto& p : rx)
      for (const auto& q : ry) worst = std::max(worst, core_norm(p, q));
  }
  return worst;
}

double cocycle_intertwining_residual(const Weight& psi, const Weight& phi, double t) {
  const Element a = psi.density().power(Complex(0, t));
  const Element b = connes_cocycle(psi, phi, t) * phi.density().power(Complex(0, t));
  return conjugation_gap(a, b);
}

double balanced_corner_residual(const Weight& psi, const Weight& phi, double t) {
  const Weight theta = balanced_weight(phi, psi);
  std::vector<Matrix> blocks;
  for (int n : phi.density().block_dims()) {
    Matrix e = Matrix::Zero(2 * n, 2 * n);
    e.bottomLeftCorner(n, n).setIdentity();
    blocks.push_back(std::move(e));
  }
  const Element flowed = modular_flow(theta, t, Element(std::move(blocks)));
  const Element u = connes_cocycle(psi, phi, t);
  double worst = 0.0;
  for (int k = 0; k < u.block_count(); ++k) {
    const Eigen::Index n = u.block(k).rows();
    worst = std::max(worst, operator_norm(flowed.block(k).bottomLeftCorner(n, n) - u.block(k)));
    worst = std::max(worst, operator_norm(flowed.block(k).topRightCorner(n, n)));
  }
  return worst;
}

}  // namespace rnkit
