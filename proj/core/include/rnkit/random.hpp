#pragma once

// Seeded generators for test data. The conversions from raw 64-bit draws are
// spelled out so results do not depend on the standard library's
// distribution implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rnkit/positive.hpp"

namespace rnkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

inline Matrix random_matrix(Rng& rng, int n) {
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline Matrix random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
  return qr.householderQ();
}

inline Element random_element(Rng& rng, const std::vector<int>& dims) {
  std::vector<Matrix> blocks;
  for (int n : dims) blocks.push_back(random_matrix(rng, n));
  return Element(std::move(blocks));
}

/// Hermitian element with spectrum uniform in [lo, hi] in a random eigenbasis.
inline Element random_hermitian(Rng& rng, const std::vector<int>& dims, double lo, double hi) {
  std::vector<Matrix> blocks;
  for (int n : dims) {
    const Matrix v = random_unitary(rng, n);
    RealVector d(n);
    for (int i = 0; i < n; ++i) d(i) = rng.uniform(lo, hi);
    Matrix b = v * d.cast<Complex>().asDiagonal() * v.adjoint();
    blocks.emplace_back((b + b.adjoint()) / 2.0);
  }
  return Element(std::move(blocks));
}

/// Positive element with log-spectrum uniform in [-spread, spread].
inline PositiveElement random_positive(Rng& rng, const std::vector<int>& dims, double spread) {
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (int n : dims) {
    vectors.push_back(random_unitary(rng, n));
    RealVector l(n);
    for (int i = 0; i < n; ++i) l(i) = rng.uniform(-spread, spread);
    logs.push_back(std::move(l));
  }
  return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
}

/// Positive element sharing the eigenbasis of `basis` with a fresh random
/// log-spectrum, so the two commute.
inline PositiveElement random_commuting_positive(Rng& rng, const PositiveElement& basis, double spread) {
  std::vector<Matrix> vectors;
  std::vector<RealVector> logs;
  for (int k = 0; k < basis.block_count(); ++k) {
    vectors.push_back(basis.vectors(k));
    RealVector l(basis.vectors(k).cols());
    for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = rng.uniform(-spread, spread);
    logs.push_back(std::move(l));
  }
  return PositiveElement::from_spectral(std::move(vectors), std::move(logs));
}

}  // namespace rnkit
