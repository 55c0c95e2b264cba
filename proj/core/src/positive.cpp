#include "rnkit/positive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rnkit/errors.hpp"
#include "rnkit/spectral.hpp"

namespace rnkit {

namespace {

Matrix spectral_function(const Matrix& v, const Eigen::VectorXcd& f) {
  return v * f.asDiagonal() * v.adjoint();
}

Element dense_value(const std::vector<Matrix>& vectors, const std::vector<RealVector>& logs) {
  std::vector<Matrix> blocks;
  for (size_t k = 0; k < vectors.size(); ++k) {
    Matrix b = spectral_function(vectors[k], logs[k].array().exp().cast<Complex>().matrix());
    blocks.emplace_back((b + b.adjoint()) / 2.0);
  }
  return Element(std::move(blocks));
}

}  // namespace

PositiveElement::PositiveElement(std::vector<Matrix> vectors, std::vector<RealVector> logs, Element value)
    : vectors_(std::move(vectors)), logs_(std::move(logs)), value_(std::move(value)) {}

PositiveElement PositiveElement::from_element(const Element& h, double tol_herm) {
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  std::vector<Matrix> sym;
  for (const auto& b : h.blocks()) {
    const HermitianSpectrum sp = hermitian_eig(b, tol_herm);
    if (sp.values.minCoeff() <= 0.0) {
      throw InvalidArgument("positive element: eigenvalue " + std::to_string(sp.values.minCoeff()) +
                            " is not strictly positive");
    }
    vectors.push_back(sp.vectors);
    logs.emplace_back(sp.values.array().log().matrix());
    sym.emplace_back((b + b.adjoint()) / 2.0);
  }
  return PositiveElement(std::move(vectors), std::move(logs), Element(std::move(sym)));
}

PositiveElement PositiveElement::from_spectral(std::vector<Matrix> vectors, std::vector<RealVector> log_values) {
  if (vectors.empty() || vectors.size() != log_values.size()) {
    throw InvalidArgument("positive element: spectral data does not match");
  }
  for (size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].rows() != vectors[k].cols() || vectors[k].cols() != log_values[k].size() ||
        vectors[k].rows() == 0) {
      throw InvalidArgument("positive element: spectral data does not match");
    }
    if (!log_values[k].allFinite()) throw InvalidArgument("positive element: non-finite log-spectrum");
  }
  Element value = dense_value(vectors, log_values);
  return PositiveElement(std::move(vectors), std::move(log_values), std::move(value));
}

PositiveElement PositiveElement::from_log(const Element& x, double tol_herm) {
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (const auto& b : x.blocks()) {
    const HermitianSpectrum sp = hermitian_eig(b, tol_herm);
    vectors.push_back(sp.vectors);
    logs.push_back(sp.values);
  }
  return from_spectral(std::move(vectors), std::move(logs));
}

PositiveElement PositiveElement::scalar(const BlockAlgebra& algebra, double value) {
  if (!(value > 0.0)) throw InvalidArgument("positive element: scalar must be positive");
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (int n : algebra.block_dims()) {
    vectors.emplace_back(Matrix::Identity(n, n));
    logs.emplace_back(RealVector::Constant(n, std::log(value)));
  }
  return from_spectral(std::move(vectors), std::move(logs));
}

Element PositiveElement::power(Complex z) const {
  if (z == Complex(0.0)) return algebra_of(value_).identity();
  std::vector<Matrix> blocks;
  for (size_t k = 0; k < vectors_.size(); ++k) {
    const Eigen::VectorXcd f = (z * logs_[k].cast<Complex>()).array().exp().matrix();
    blocks.push_back(spectral_function(vectors_[k], f));
  }
  return Element(std::move(blocks));
}

Element PositiveElement::log() const {
  std::vector<Matrix> blocks;
  for (size_t k = 0; k < vectors_.size(); ++k) {
    Matrix b = spectral_function(vectors_[k], logs_[k].cast<Complex>());
    blocks.emplace_back((b + b.adjoint()) / 2.0);
  }
  return Element(std::move(blocks));
}

Element PositiveElement::log_function(const std::function<Complex(double)>& f) const {
  std::vector<Matrix> blocks;
  for (size_t k = 0; k < vectors_.size(); ++k) {
    Eigen::VectorXcd d(logs_[k].size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(logs_[k](i));
    blocks.push_back(spectral_function(vectors_[k], d));
  }
  return Element(std::move(blocks));
}

BlockVector PositiveElement::apply_power(Complex z, const BlockVector& v) const {
  if (v.size() != vectors_.size()) throw InvalidArgument("apply_power: block vector mismatch");
  BlockVector out(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].size() != vectors_[k].rows()) throw InvalidArgument("apply_power: block vector mismatch");
    const Eigen::VectorXcd f = (z * logs_[k].cast<Complex>()).array().exp().matrix();
    out[k] = vectors_[k] * (f.asDiagonal() * (vectors_[k].adjoint() * v[k]));
  }
  return out;
}

PositiveElement PositiveElement::real_power(double r) const {
  std::vector<RealVector> logs;
  for (const auto& l : logs_) logs.emplace_back(r * l);
  return from_spectral(vectors_, std::move(logs));
}

double PositiveElement::spectral_floor() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& l : logs_) m = std::min(m, l.minCoeff());
  return std::exp(m);
}

double PositiveElement::log_norm() const {
  double m = 0.0;
  for (const auto& l : logs_) m = std::max(m, l.cwiseAbs().maxCoeff());
  return m;
}

double PositiveElement::log_spread() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& l : logs_) {
    lo = std::min(lo, l.minCoeff());
    hi = std::max(hi, l.maxCoeff());
  }
  return hi - lo;
}

Element mat_power(const PositiveElement& h, Complex z) { return h.power(z); }

PositiveElement congruence(const PositiveElement& delta, const PositiveElement& h) {
  if (delta.block_dims() != h.block_dims()) throw InvalidArgument("congruence: elements belong to different algebras");
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (int k = 0; k < h.block_count(); ++k) {
    const RealVector& ld = delta.log_values(k);
    const RealVector& lh = h.log_values(k);
    const Matrix g = (ld / 2.0).array().exp().matrix().asDiagonal() * (delta.vectors(k).adjoint() * h.vectors(k)) *
                     (lh / 2.0).array().exp().matrix().asDiagonal();
    const GradedSvd svd = graded_left_svd(g);
    vectors.emplace_back(delta.vectors(k) * svd.left);
    logs.emplace_back(2.0 * svd.log_sigma);
  }
  return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
}

PositiveElement block_diagonal(const PositiveElement& a, const PositiveElement& b) {
  if (a.block_dims() != b.block_dims()) throw InvalidArgument("block_diagonal: elements belong to different algebras");
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (int k = 0; k < a.block_count(); ++k) {
    const Eigen::Index n = a.vectors(k).rows();
    Matrix v = Matrix::Zero(2 * n, 2 * n);
    v.topLeftCorner(n, n) = a.vectors(k);
    v.bottomRightCorner(n, n) = b.vectors(k);
    RealVector l(2 * n);
    l << a.log_values(k), b.log_values(k);
    vectors.push_back(std::move(v));
    logs.push_back(std::move(l));
  }
  return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
}

Complex Weight::operator()(const Element& x) const {
  const Element& h = density_.element();
  require_same_shape(h, x, "weight");
  Complex s = 0.0;
  for (int k = 0; k < h.block_count(); ++k) s += (h.block(k).transpose().cwiseProduct(x.block(k))).sum();
  return s;
}

double Weight::on_vector(const BlockVector& p) const {
  const BlockVector hp = density_.apply_power(1.0, p);
  return std::real(inner(hp, p));
}

const char* to_string(Mode mode) { return mode == Mode::exact ? "exact" : "approximate"; }

std::string CertificationGrid::describe() const {
  std::ostringstream os;
  os << "s in {";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << "} x t in {";
  for (size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
  os << "}";
  return os.str();
}

InvariancePair::InvariancePair(PositiveElement delta, PositiveElement lambda, Mode mode, double residual,
                               std::string grid)
    : delta_(std::move(delta)), lambda_(std::move(lambda)), mode_(mode), residual_(residual), grid_(std::move(grid)) {}

void require_commuting(const PositiveElement& delta, const PositiveElement& lambda) {
  const double defect = commutation_defect(delta.element(), lambda.element());
  const double bound = 1e-12 * delta.element().norm() * lambda.element().norm();
  if (defect > bound) {
    throw InvalidArgument("invariance pair: delta and lambda do not commute (defect " + std::to_string(defect) + ")");
  }
}

InvariancePair InvariancePair::certify(const Weight& phi, PositiveElement delta, PositiveElement lambda, Mode mode,
                                       const CertificationGrid& grid) {
  if (delta.block_dims() != phi.density().block_dims() || lambda.block_dims() != phi.density().block_dims()) {
    throw InvalidArgument("invariance pair: elements belong to different algebras");
  }
  require_commuting(delta, lambda);
  double worst = 0.0;
  for (double s : grid.s)
    for (double t : grid.t) worst = std::max(worst, relative_invariance_residual(phi, delta, lambda, s, t));
  if (mode == Mode::exact && worst > 1e-10) {
    throw ModeViolation("exact mode: relative invariance residual " + std::to_string(worst) +
                        " exceeds 1e-10; at finite dimension bounded conjugation orbits force lambda = 1");
  }
  return InvariancePair(std::move(delta), std::move(lambda), mode, worst, grid.describe());
}

InvariancePair InvariancePair::with_residual(PositiveElement delta, PositiveElement lambda, double residual,
                                             std::string grid_description) {
  if (delta.block_dims() != lambda.block_dims()) throw InvalidArgument("invariance pair: shape mismatch");
  require_commuting(delta, lambda);
  return InvariancePair(std::move(delta), std::move(lambda), Mode::approximate, residual,
                        std::move(grid_description));
}

double relative_invariance_residual(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                                    double s, double t) {
  const PositiveElement& h = phi.density();
  const Element lhs = h.power(Complex(0, t)) * delta.power(Complex(0, s)) * h.power(Complex(0, -t));
  const Element rhs = lambda.power(Complex(0, s * t)) * delta.power(Complex(0, s));
  return (lhs - rhs).norm();
}

double relative_invariance_residual(const Weight& phi, const InvariancePair& pair, double s, double t) {
  return relative_invariance_residual(phi, pair.delta(), pair.lambda(), s, t);
}

double relative_invariance_residual(const Weight& phi, const PositiveElement& delta, const PositiveElement& lambda,
                                    double s, double t, const BlockVector& probe) {
  const PositiveElement& h = phi.density();
  const BlockVector lhs =
      h.apply_power(Complex(0, t), delta.apply_power(Complex(0, s), h.apply_power(Complex(0, -t), probe)));
  const BlockVector rhs = lambda.apply_power(Complex(0, s * t), delta.apply_power(Complex(0, s), probe));
  return norm(lhs - rhs) / norm(probe);
}

}  // namespace rnkit
