#pragma once

// Finite-dimensional von Neumann algebras realized as direct sums of full
// complex matrix blocks, and their elements.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rnkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// A vector of the defining representation, one column per block.
using BlockVector = std::vector<Vector>;

class BlockAlgebra;

/// Element of a block algebra: one dense n_k x n_k matrix per block.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<Matrix> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int k) const { return blocks_[static_cast<size_t>(k)]; }
  Matrix& block(int k) { return blocks_[static_cast<size_t>(k)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  std::vector<int> block_dims() const;
  bool same_shape(const Element& other) const;

  Element adjoint() const;
  Complex trace() const;

  /// Operator norm: max over blocks of the largest singular value.
  double norm() const;
  double frobenius_norm() const;
  /// ||a - a*|| in operator norm.
  double hermiticity_defect() const;

  /// Block-diagonal matrix on the defining representation.
  Matrix to_dense() const;
  BlockVector apply(const BlockVector& v) const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(Complex scalar);

  friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
  friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
  friend Element operator*(Element lhs, Complex scalar) { return lhs *= scalar; }
  friend Element operator*(Complex scalar, Element rhs) { return rhs *= scalar; }
  friend Element operator*(const Element& lhs, const Element& rhs);

 private:
  std::vector<Matrix> blocks_;
};

class BlockAlgebra {
 public:
  /// Throws InvalidArgument on an empty list or a zero dimension.
  static BlockAlgebra build(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  int block_count() const { return static_cast<int>(dims_.size()); }
  /// Dimension of the algebra as a vector space, sum of n_k^2.
  int total_dim() const;
  /// Dimension of the defining representation, sum of n_k.
  int hilbert_dim() const;
  int centre_dim() const { return block_count(); }

  Element zero() const;
  Element identity() const;
  Element scalar(Complex value) const;
  Element matrix_unit(int block, int row, int col) const;
  /// Matrix units in block order, row-major inside each block.
  std::vector<Element> basis() const;

  BlockVector zero_vector() const;
  bool admits(const Element& x) const;

  friend bool operator==(const BlockAlgebra&, const BlockAlgebra&) = default;

 private:
  explicit BlockAlgebra(std::vector<int> dims) : dims_(std::move(dims)) {}
  std::vector<int> dims_;
};

BlockAlgebra algebra_of(const Element& x);

/// Identity on block k, zero elsewhere; k = 0 .. B-1.
std::vector<Element> centre_projectors(const BlockAlgebra& algebra);

/// ||ab - ba||; throws InvalidArgument on a shape mismatch.
double commutation_defect(const Element& a, const Element& b);

/// Largest ||[x, e]|| over all matrix units e of the algebra, evaluated
/// in closed form (each commutator has rank at most two).
double centrality_defect(const Element& x);

double operator_norm(const Matrix& m);
double norm(const BlockVector& v);
BlockVector operator-(const BlockVector& a, const BlockVector& b);
Complex inner(const BlockVector& a, const BlockVector& b);

void require_same_shape(const Element& a, const Element& b, const char* what);

}  // namespace rnkit
