#include "rnkit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rnkit/errors.hpp"
#include "rnkit/spectral.hpp"

namespace rnkit {

Element::Element(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.rows() != b.cols() || b.rows() == 0) {
      throw InvalidArgument("element blocks must be non-empty square matrices");
    }
  }
}

std::vector<int> Element::block_dims() const {
  std::vector<int> dims;
  dims.reserve(blocks_.size());
  for (const auto& b : blocks_) dims.push_back(static_cast<int>(b.rows()));
  return dims;
}

bool Element::same_shape(const Element& other) const {
  return block_dims() == other.block_dims();
}

Element Element::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.emplace_back(b.adjoint());
  return Element(std::move(out));
}

Complex Element::trace() const {
  Complex t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

double Element::norm() const {
  double n = 0.0;
  for (const auto& b : blocks_) n = std::max(n, operator_norm(b));
  return n;
}

double Element::frobenius_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

double Element::hermiticity_defect() const {
  double d = 0.0;
  for (const auto& b : blocks_) d = std::max(d, operator_norm(b - b.adjoint()));
  return d;
}

Matrix Element::to_dense() const {
  Eigen::Index n = 0;
  for (const auto& b : blocks_) n += b.rows();
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks_) {
    m.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return m;
}

BlockVector Element::apply(const BlockVector& v) const {
  if (v.size() != blocks_.size()) throw InvalidArgument("block vector does not match element");
  BlockVector out(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].size() != blocks_[k].cols()) throw InvalidArgument("block vector does not match element");
    out[k] = blocks_[k] * v[k];
  }
  return out;
}

Element& Element::operator+=(const Element& rhs) {
  require_same_shape(*this, rhs, "addition");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_same_shape(*this, rhs, "subtraction");
  for (size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
  return *this;
}

Element& Element::operator*=(Complex scalar) {
  for (auto& b : blocks_) b *= scalar;
  return *this;
}

Element operator*(const Element& lhs, const Element& rhs) {
  require_same_shape(lhs, rhs, "product");
  std::vector<Matrix> out;
  out.reserve(lhs.blocks_.size());
  for (size_t k = 0; k < lhs.blocks_.size(); ++k) out.emplace_back(lhs.blocks_[k] * rhs.blocks_[k]);
  return Element(std::move(out));
}

BlockAlgebra BlockAlgebra::build(std::vector<int> block_dims) {
  if (block_dims.empty()) throw InvalidArgument("block algebra needs at least one block");
  for (int n : block_dims) {
    if (n < 1) throw InvalidArgument("block dimensions must be positive, got " + std::to_string(n));
  }
  return BlockAlgebra(std::move(block_dims));
}

int BlockAlgebra::total_dim() const {
  int s = 0;
  for (int n : dims_) s += n * n;
  return s;
}

int BlockAlgebra::hilbert_dim() const {
  int s = 0;
  for (int n : dims_) s += n;
  return s;
}

Element BlockAlgebra::zero() const {
  std::vector<Matrix> b;
  for (int n : dims_) b.emplace_back(Matrix::Zero(n, n));
  return Element(std::move(b));
}

Element BlockAlgebra::identity() const { return scalar(1.0); }

Element BlockAlgebra::scalar(Complex value) const {
  std::vector<Matrix> b;
  for (int n : dims_) b.emplace_back(value * Matrix::Identity(n, n));
  return Element(std::move(b));
}

Element BlockAlgebra::matrix_unit(int block, int row, int col) const {
  if (block < 0 || block >= block_count()) throw InvalidArgument("matrix unit block out of range");
  const int n = dims_[static_cast<size_t>(block)];
  if (row < 0 || row >= n || col < 0 || col >= n) throw InvalidArgument("matrix unit index out of range");
  Element e = zero();
  e.block(block)(row, col) = 1.0;
  return e;
}

std::vector<Element> BlockAlgebra::basis() const {
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(total_dim()));
  for (int k = 0; k < block_count(); ++k) {
    const int n = dims_[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.push_back(matrix_unit(k, i, j));
  }
  return out;
}

BlockVector BlockAlgebra::zero_vector() const {
  BlockVector v;
  for (int n : dims_) v.emplace_back(Vector::Zero(n));
  return v;
}

bool BlockAlgebra::admits(const Element& x) const { return x.block_dims() == dims_; }

BlockAlgebra algebra_of(const Element& x) { return BlockAlgebra::build(x.block_dims()); }

std::vector<Element> centre_projectors(const BlockAlgebra& algebra) {
  std::vector<Element> out;
  for (int k = 0; k < algebra.block_count(); ++k) {
    Element p = algebra.zero();
    p.block(k).setIdentity();
    out.push_back(std::move(p));
  }
  return out;
}

double commutation_defect(const Element& a, const Element& b) {
  require_same_shape(a, b, "commutation_defect");
  return (a * b - b * a).norm();
}

double centrality_defect(const Element& x) {
  // [x, e_ij] = u e_j^T - e_i r with u = x(:, i), r = x(j, :); its norm is
  // that of the 2x2 core R_X R_Y* for X = [u, -e_i], Y = [e_j, r*].
  double worst = 0.0;
  for (const auto& b : x.blocks()) {
    const Eigen::Index n = b.rows();
    std::vector<Eigen::Matrix2cd> rx;
    std::vector<Eigen::Matrix2cd> ry;
    for (Eigen::Index i = 0; i < n; ++i) {
      rx.push_back(thin_r_factor(b.col(i), -Vector::Unit(n, i)));
      ry.push_back(thin_r_factor(Vector::Unit(n, i), b.row(i).adjoint()));
    }
    for (const auto& p : rx)
      for (const auto& q : ry) worst = std::max(worst, core_norm(p, q));
  }
  return worst;
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1) return m.norm();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double norm(const BlockVector& v) {
  double s = 0.0;
  for (const auto& b : v) s += b.squaredNorm();
  return std::sqrt(s);
}

BlockVector operator-(const BlockVector& a, const BlockVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("block vector mismatch");
  BlockVector out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

Complex inner(const BlockVector& a, const BlockVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("block vector mismatch");
  Complex s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k].dot(b[k]);
  return s;
}

void require_same_shape(const Element& a, const Element& b, const char* what) {
  if (!a.same_shape(b)) throw InvalidArgument(std::string(what) + ": elements belong to different algebras");
}

}  // namespace rnkit
