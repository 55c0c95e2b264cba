#pragma once

// Positive definite elements, weights given by densities, and the
// relative invariance data (delta, lambda).

#include <functional>
#include <string>
#include <vector>

#include "rnkit/algebra.hpp"

namespace rnkit {

/// Positive definite element stored in spectral form: per block a unitary V
/// and a real log-spectrum l, so that h^z = V diag(exp(z l)) V*.
class PositiveElement {
 public:
  PositiveElement() = default;

  /// Throws InvalidArgument if a block is not Hermitian within tol_herm
  /// (relative to its norm) or has a non-positive eigenvalue.
  static PositiveElement from_element(const Element& h, double tol_herm = 1e-12);
  static PositiveElement from_spectral(std::vector<Matrix> vectors, std::vector<RealVector> log_values);
  /// exp(x) for Hermitian x.
  static PositiveElement from_log(const Element& x, double tol_herm = 1e-12);
  static PositiveElement scalar(const BlockAlgebra& algebra, double value);

  const Element& element() const { return value_; }
  std::vector<int> block_dims() const { return value_.block_dims(); }
  int block_count() const { return static_cast<int>(vectors_.size()); }
  const Matrix& vectors(int k) const { return vectors_[static_cast<size_t>(k)]; }
  const RealVector& log_values(int k) const { return logs_[static_cast<size_t>(k)]; }

  Element power(Complex z) const;
  Element log() const;
  /// V diag(f(l)) V* blockwise, f applied to the log-spectrum.
  Element log_function(const std::function<Complex(double)>& f) const;
  BlockVector apply_power(Complex z, const BlockVector& v) const;
  /// Same eigenvectors, log-spectrum scaled by r (so h^r).
  PositiveElement real_power(double r) const;
  PositiveElement inverse() const { return real_power(-1.0); }

  double spectral_floor() const;
  /// max |l| = ||log h||.
  double log_norm() const;
  /// max l - min l over all blocks.
  double log_spread() const;

 private:
  PositiveElement(std::vector<Matrix> vectors, std::vector<RealVector> logs, Element value);
  std::vector<Matrix> vectors_;
  std::vector<RealVector> logs_;
  Element value_;
};

/// h^z; z = 0 gives the identity exactly.
Element mat_power(const PositiveElement& h, Complex z);

/// delta^{1/2} h delta^{1/2}, computed from the graded factor
/// exp(l_delta/2) V_delta* V_h exp(l_h/2) so that extreme spectra keep
/// their relative accuracy.
PositiveElement congruence(const PositiveElement& delta, const PositiveElement& h);

/// Block k of the result is diag(a_k, b_k) (2x2 amplification, blockwise).
PositiveElement block_diagonal(const PositiveElement& a, const PositiveElement& b);

/// phi(x) = sum_k trace(h_k x_k).
class Weight {
 public:
  Weight() = default;
  explicit Weight(PositiveElement density) : density_(std::move(density)) {}

  const PositiveElement& density() const { return density_; }
  BlockAlgebra algebra() const { return algebra_of(density_.element()); }
  Complex operator()(const Element& x) const;
  /// phi(p p*) = <p, h p> for a vector of the defining representation.
  double on_vector(const BlockVector& p) const;

 private:
  PositiveElement density_;
};

enum class Mode { exact, approximate };

const char* to_string(Mode mode);

struct CertificationGrid {
  std::vector<double> s{-1.0, -0.5, 0.5, 1.0};
  std::vector<double> t{-1.0, -0.5, 0.5, 1.0};
  std::string describe() const;
};

/// Commuting positive pair (delta, lambda) with a recorded residual of
/// sigma_t(delta^{is}) = lambda^{ist} delta^{is}.
class InvariancePair {
 public:
  InvariancePair() = default;
  /// Checks [delta, lambda] = 0 (InvalidArgument otherwise) and measures the
  /// invariance residual on the grid. In exact mode a residual above 1e-10
  /// throws ModeViolation.
  static InvariancePair certify(const Weight& phi, PositiveElement delta, PositiveElement lambda, Mode mode,
                                const CertificationGrid& grid = {});
  /// Approximate-mode pair whose residual was measured elsewhere (testbed probes).
  static InvariancePair with_residual(PositiveElement delta, PositiveElement lambda, double residual,
                                      std::string grid_description);

  const PositiveElement& delta() const { return delta_; }
  const PositiveElement& lambda() const { return lambda_; }
  Mode mode() const { return mode_; }
  double invariance_residual() const { return residual_; }
  const std::string& grid_description() const { return grid_; }

 private:
  InvariancePair(PositiveElement delta, PositiveElement lambda, Mode mode, double residual, std::string grid);
  PositiveElement delta_;
  PositiveElement lambda_;
  Mode mode_ = Mode::exact;
  double residual_ = 0.0;
  std::string grid_;
};

/// ||h^{it} delta^{is} h^{-it} - lambda^{ist} delta^{is}||.
double relative_invariance_residual(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                                    double s, double t);
double relative_invariance_residual(const Weight& phi, const InvariancePair& pair, double s, double t);
/// Probe version: ||(h^{it} delta^{is} h^{-it} - lambda^{ist} delta^{is}) p|| / ||p||.
double relative_invariance_residual(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                                    double s, double t, const BlockVector& probe);

/// Throws InvalidArgument unless [delta, lambda] = 0 within 1e-12 ||delta|| ||lambda||.
void require_commuting(const PositiveElement& delta, const PositiveElement& lambda);

}  // namespace rnkit
