#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rnkit/errors.hpp"
#include "rnkit/positive.hpp"
#include "rnkit/random.hpp"

namespace rnkit {
namespace {

PositiveElement diag_positive(std::initializer_list<double> values) {
  RealVector l(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l(i++) = std::log(v);
  return PositiveElement::from_spectral({Matrix::Identity(l.size(), l.size())}, {l});
}

TEST(MatPower, HandValues) {
  const PositiveElement h = diag_positive({1, 2});
  EXPECT_EQ((mat_power(h, 0.0) - BlockAlgebra::build({2}).identity()).norm(), 0.0);
  EXPECT_NEAR(mat_power(diag_positive({4}), 0.5).block(0)(0, 0).real(), 2.0, 1e-15);
  const Element hi = mat_power(h, Complex(0, 1));
  EXPECT_NEAR(std::abs(hi.block(0)(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hi.block(0)(1, 1) - std::exp(Complex(0, std::log(2.0)))), 0.0, 1e-15);
}

TEST(MatPower, AgreesWithEigensolverOracle) {
  Rng rng(31);
  const PositiveElement h = random_positive(rng, {4}, 2.0);
  for (Complex z : {Complex(0.5, 0), Complex(0, 1.3), Complex(-0.7, 0.4)}) {
    const Matrix want = oracle::hpow(h.element().block(0), z);
    EXPECT_LE(operator_norm(h.power(z).block(0) - want), 1e-11 * std::max(1.0, operator_norm(want)));
  }
}

// Property: h^{z1} h^{z2} = h^{z1+z2} and imaginary powers are unitary.
TEST(MatPower, GroupLawProperty) {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    Rng rng(seed);
    const PositiveElement h = random_positive(rng, {2, 3}, 1.5);
    const Complex z1(rng.uniform(-1, 1), rng.uniform(-2, 2));
    const Complex z2(rng.uniform(-1, 1), rng.uniform(-2, 2));
    const Element lhs = h.power(z1) * h.power(z2);
    const Element rhs = h.power(z1 + z2);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * std::max(1.0, rhs.norm())) << "seed " << seed;
    const Element u = h.power(Complex(0, z1.imag()));
    EXPECT_LE((u * u.adjoint() - algebra_of(u).identity()).norm(), 1e-13) << "seed " << seed;
  }
}

TEST(PositiveElement, RejectsNonPositive) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1.0;
  EXPECT_THROW(PositiveElement::from_element(Element({m})), InvalidArgument);
  m(1, 1) = 0.0;
  EXPECT_THROW(PositiveElement::from_element(Element({m})), InvalidArgument);
  EXPECT_THROW(PositiveElement::scalar(BlockAlgebra::build({2}), 0.0), InvalidArgument);
}

TEST(Congruence, MatchesDenseProduct) {
  Rng rng(40);
  const PositiveElement d = random_positive(rng, {3}, 1.0);
  const PositiveElement h = random_positive(rng, {3}, 1.0);
  const Matrix rd = oracle::hpow(d.element().block(0), 0.5);
  const Matrix want = rd * h.element().block(0) * rd;
  EXPECT_LE(operator_norm(congruence(d, h).element().block(0) - want), 1e-12 * operator_norm(want));
}

TEST(Congruence, ExtremeSpectraKeepRelativeAccuracy) {
  // delta = diag(e^30, e^-30), h = diag(e^-30, e^30): the product is the identity
  RealVector ld(2), lh(2);
  ld << 30, -30;
  lh << -30, 30;
  const PositiveElement d = PositiveElement::from_spectral({Matrix::Identity(2, 2)}, {ld});
  const PositiveElement h = PositiveElement::from_spectral({Matrix::Identity(2, 2)}, {lh});
  const PositiveElement c = congruence(d, h);
  EXPECT_LE(c.log_norm(), 1e-12);
}

TEST(Weight, IsTraceAgainstDensity) {
  Rng rng(41);
  const PositiveElement h = random_positive(rng, {2, 3}, 1.0);
  const Weight phi(h);
  const Element x = random_element(rng, {2, 3});
  const Complex want = (h.element() * x).trace();
  EXPECT_NEAR(std::abs(phi(x) - want), 0.0, 1e-13);
  BlockVector p{Vector::Ones(2), Vector::Zero(3)};
  EXPECT_NEAR(phi.on_vector(p), h.element().block(0).sum().real(), 1e-13);
}

TEST(BlockDiagonal, Assembly) {
  const PositiveElement b = block_diagonal(diag_positive({1, 2}), diag_positive({3, 1}));
  const Matrix d = b.element().block(0);
  ASSERT_EQ(d.rows(), 4);
  const double want[] = {1, 2, 3, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d(i, i).real(), want[i], 1e-15);
  EXPECT_NEAR(d.norm(), std::sqrt(15.0), 1e-14);
}

TEST(InvariancePair, CommutingDiagonalIsExact) {
  const Weight phi(diag_positive({1, 2}));
  const InvariancePair p =
      InvariancePair::certify(phi, diag_positive({3, 1}), diag_positive({1, 1}), Mode::exact);
  EXPECT_EQ(p.mode(), Mode::exact);
  EXPECT_LE(p.invariance_residual(), 1e-15);
  for (double s : {-1.0, 0.3, 2.0})
    for (double t : {-2.0, 0.7}) EXPECT_EQ(relative_invariance_residual(phi, p, s, t), 0.0);
}

TEST(InvariancePair, ScalarDeltaIsInvariantForAnyWeight) {
  Rng rng(42);
  const Weight phi(random_positive(rng, {3}, 1.0));
  const PositiveElement one = PositiveElement::scalar(BlockAlgebra::build({3}), 1.0);
  EXPECT_LE(relative_invariance_residual(phi, one, one, 0.8, -1.1), 1e-15);
}

TEST(InvariancePair, NonCommutingThrows) {
  Rng rng(43);
  const Weight phi(diag_positive({1, 2}));
  EXPECT_THROW(InvariancePair::certify(phi, random_positive(rng, {2}, 1.0), diag_positive({2, 1}), Mode::approximate),
               InvalidArgument);
}

TEST(InvariancePair, NontrivialLambdaViolatesExactMode) {
  const Weight phi(diag_positive({1, 2}));
  EXPECT_THROW(InvariancePair::certify(phi, diag_positive({3, 1}), diag_positive({2, 2}), Mode::exact),
               ModeViolation);
  const InvariancePair p =
      InvariancePair::certify(phi, diag_positive({3, 1}), diag_positive({2, 2}), Mode::approximate);
  EXPECT_GT(p.invariance_residual(), 0.1);
}

}  // namespace
}  // namespace rnkit
