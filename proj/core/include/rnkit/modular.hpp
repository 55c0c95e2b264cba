#pragma once

// GNS realization of a finite-dimensional weight, modular data, flows and
// Connes cocycles.

#include "rnkit/positive.hpp"

namespace rnkit {

/// Map on GNS vectors of the form xi -> L op(xi) R, where op is the identity
/// or (antilinear case) the adjoint.
class Superoperator {
 public:
  Superoperator(Element left, Element right, bool antilinear = false);
  static Superoperator identity(const BlockAlgebra& algebra);
  static Superoperator left_multiplication(const Element& a);
  static Superoperator right_multiplication(const Element& a);
  /// J: xi -> xi*.
  static Superoperator conjugation(const BlockAlgebra& algebra);

  const Element& left() const { return left_; }
  const Element& right() const { return right_; }
  bool antilinear() const { return antilinear_; }

  Element apply(const Element& xi) const;
  Element operator()(const Element& xi) const { return apply(xi); }

  /// Dense matrix on the total_dim-dimensional GNS space in the basis of
  /// matrix units (block order, row-major inside a block). For an antilinear
  /// map the matrix acts on the entrywise conjugate of the coordinates.
  Matrix dense() const;
  Vector coordinates(const Element& xi) const;

  /// Composition: (a * b)(xi) = a(b(xi)).
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  Element left_;
  Element right_;
  bool antilinear_ = false;
};

/// Largest ||a(e) - b(e)|| over matrix units e (Frobenius norm on GNS vectors).
double basis_distance(const Superoperator& a, const Superoperator& b);

class GnsRealization {
 public:
  explicit GnsRealization(Weight weight);

  const Weight& weight() const { return weight_; }
  BlockAlgebra algebra() const { return weight_.algebra(); }

  /// Lambda(a) = a h^{1/2}.
  Element lambda_map(const Element& a) const;
  Superoperator J() const;
  /// Delta^z: xi -> h^z xi h^{-z}.
  Superoperator delta_power(Complex z) const;
  /// S = J Delta^{1/2}.
  Superoperator S() const;

 private:
  Weight weight_;
  Element root_;
};

/// <xi, eta> = sum_k trace(eta_k* xi_k).
Complex gns_inner(const Element& xi, const Element& eta);

GnsRealization gns(const Weight& phi);

/// sigma_z(x) = h^{iz} x h^{-iz}; entire in z.
Element modular_flow(const Weight& phi, Complex z, const Element& x);

/// |phi(x sigma_{-i}(y)) - phi(y x)|.
double kms_residual(const Weight& phi, const Element& x, const Element& y);

/// Weight on the blockwise 2x2 amplification with density diag(h_phi, h_psi).
Weight balanced_weight(const Weight& phi, const Weight& psi);

/// [D psi : D phi]_t = h_psi^{it} h_phi^{-it}.
Element connes_cocycle(const Weight& psi, const Weight& phi, double t);

/// ||u_{t+s} - u_t sigma_t^phi(u_s)||.
double cocycle_chain_residual(const Weight& psi, const Weight& phi, double s, double t);
/// ||u_{-t} - sigma_{-t}^phi(u_t*)||.
double cocycle_inverse_residual(const Weight& psi, const Weight& phi, double t);
/// max over matrix units x of ||sigma_t^psi(x) - u_t sigma_t^phi(x) u_t*||.
double cocycle_intertwining_residual(const Weight& psi, const Weight& phi, double t);
/// ||lower-left corner of sigma_t^theta(e_21 (x) 1) - u_t|| for the balanced weight theta(phi, psi).
double balanced_corner_residual(const Weight& psi, const Weight& phi, double t);

/// max over matrix units e of ||a e a* - b e b*|| for unitaries a, b.
double conjugation_gap(const Element& a, const Element& b);

}  // namespace rnkit
