#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rnkit/errors.hpp"
#include "rnkit/modular.hpp"
#include "rnkit/random.hpp"

namespace rnkit {
namespace {

PositiveElement diag_positive(std::initializer_list<double> values) {
  RealVector l(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l(i++) = std::log(v);
  return PositiveElement::from_spectral({Matrix::Identity(l.size(), l.size())}, {l});
}

const BlockAlgebra k2 = BlockAlgebra::build({2});

TEST(Superoperator, DenseMatchesSandwichOracle) {
  Rng rng(50);
  const Element l = random_element(rng, {3});
  const Element r = random_element(rng, {3});
  const Superoperator op(l, r);
  EXPECT_LE(operator_norm(op.dense() - oracle::dense_sandwich(l.block(0), r.block(0))), 1e-13);
  const Element xi = random_element(rng, {3});
  EXPECT_LE((op.dense() * op.coordinates(xi) - op.coordinates(op(xi))).norm(), 1e-12);
}

TEST(Superoperator, AntilinearDenseActsOnConjugate) {
  Rng rng(51);
  const Superoperator op(random_element(rng, {2, 2}), random_element(rng, {2, 2}), true);
  const Element xi = random_element(rng, {2, 2});
  EXPECT_LE((op.dense() * op.coordinates(xi).conjugate() - op.coordinates(op(xi))).norm(), 1e-12);
}

TEST(Superoperator, CompositionIncludingAntilinear) {
  Rng rng(52);
  const Superoperator a(random_element(rng, {3}), random_element(rng, {3}), true);
  const Superoperator b(random_element(rng, {3}), random_element(rng, {3}));
  const Element xi = random_element(rng, {3});
  EXPECT_LE(((a * b)(xi) - a(b(xi))).norm(), 1e-12);
  EXPECT_LE(((b * a)(xi) - b(a(xi))).norm(), 1e-12);
  EXPECT_LE(((a * a)(xi) - a(a(xi))).norm(), 1e-12);
}

TEST(Gns, TracialDeltaIsIdentity) {
  const GnsRealization g = gns(Weight(PositiveElement::scalar(k2, 1.0)));
  EXPECT_EQ(basis_distance(g.delta_power(1.0), Superoperator::identity(k2)), 0.0);
}

TEST(Gns, DeltaAndSOnDiagonalWeight) {
  const GnsRealization g = gns(Weight(diag_positive({1, 2})));
  const Element e12 = k2.matrix_unit(0, 0, 1);
  const Element e21 = k2.matrix_unit(0, 1, 0);
  EXPECT_LE((g.delta_power(1.0)(e12) - 0.5 * e12).norm(), 1e-15);
  // S Lambda(a) = Lambda(a*)
  EXPECT_LE((g.S()(g.lambda_map(e12)) - g.lambda_map(e21)).norm(), 1e-15);
}

TEST(Gns, InnerProductRealizesWeight) {
  Rng rng(53);
  const Weight phi(random_positive(rng, {2, 3}, 1.0));
  const GnsRealization g = gns(phi);
  const Element a = random_element(rng, {2, 3});
  const Element b = random_element(rng, {2, 3});
  EXPECT_NEAR(std::abs(gns_inner(g.lambda_map(a), g.lambda_map(b)) - phi(b.adjoint() * a)), 0.0, 1e-12);
}

TEST(ModularFlow, DiagonalHandValues) {
  const Weight phi(diag_positive({1, 2}));
  const Element e12 = k2.matrix_unit(0, 0, 1);
  const double t = 0.8;
  const Complex phase = std::exp(Complex(0, t) * std::log(0.5));
  EXPECT_LE((modular_flow(phi, t, e12) - phase * e12).norm(), 1e-15);
  EXPECT_LE((modular_flow(phi, Complex(0.3, 0.2), k2.identity()) - k2.identity()).norm(), 1e-15);
  // sigma_{-i}(x) = h x h^{-1}
  EXPECT_LE((modular_flow(phi, Complex(0, -1), e12) - 0.5 * e12).norm(), 1e-15);
}

TEST(Kms, Residuals) {
  Rng rng(54);
  EXPECT_EQ(kms_residual(Weight(PositiveElement::scalar(k2, 1.0)), random_element(rng, {2}),
                         random_element(rng, {2})),
            0.0);
  EXPECT_LE(kms_residual(Weight(diag_positive({1, 2})), k2.matrix_unit(0, 0, 1), k2.matrix_unit(0, 1, 0)), 1e-15);
  const Weight phi(random_positive(rng, {3}, 1.0));
  EXPECT_LE(kms_residual(phi, random_element(rng, {3}), random_element(rng, {3})), 1e-12);
}

TEST(BalancedWeight, Assembly) {
  const Weight b = balanced_weight(Weight(diag_positive({1, 2})), Weight(diag_positive({3, 1})));
  const Matrix d = b.density().element().block(0);
  const double want[] = {1, 2, 3, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d(i, i).real(), want[i], 1e-15);
  const Weight phi(diag_positive({1, 2}));
  const Weight same = balanced_weight(phi, phi);
  EXPECT_NEAR(same.density().element().block(0)(3, 3).real(), 2.0, 1e-15);
  EXPECT_THROW(balanced_weight(phi, Weight(diag_positive({1, 2, 3}))), InvalidArgument);
}

TEST(ConnesCocycle, HandValuesAndOracle) {
  const Weight phi(diag_positive({1, 2}));
  const Weight psi(diag_positive({3, 2}));
  const double t = 1.3;
  const Element u = connes_cocycle(psi, phi, t);
  EXPECT_NEAR(std::abs(u.block(0)(0, 0) - std::exp(Complex(0, t * std::log(3.0)))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u.block(0)(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_LE((connes_cocycle(phi, phi, t) - k2.identity()).norm(), 1e-15);
  EXPECT_LE((connes_cocycle(psi, phi, 0.0) - k2.identity()).norm(), 0.0);

  Rng rng(55);
  const Weight a(random_positive(rng, {3}, 1.0));
  const Weight b(random_positive(rng, {3}, 1.0));
  const Matrix want = oracle::hpow(a.density().element().block(0), Complex(0, t)) *
                      oracle::hpow(b.density().element().block(0), Complex(0, -t));
  EXPECT_LE(operator_norm(connes_cocycle(a, b, t).block(0) - want), 1e-12);
}

// Property: chain, inverse, intertwining and corner rules on random non-commuting weights.
TEST(ConnesCocycle, AlgebraProperty) {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    Rng rng(seed);
    const Weight phi(random_positive(rng, {3}, 1.0));
    const Weight psi(random_positive(rng, {3}, 1.0));
    const double s = rng.uniform(-3, 3);
    const double t = rng.uniform(-3, 3);
    EXPECT_LE(cocycle_chain_residual(psi, phi, s, t), 1e-11) << seed;
    EXPECT_LE(cocycle_inverse_residual(psi, phi, t), 1e-11) << seed;
    EXPECT_LE(cocycle_intertwining_residual(psi, phi, t), 1e-11) << seed;
    EXPECT_LE(balanced_corner_residual(psi, phi, t), 1e-12) << seed;
  }
  Rng rng(7);
  const Weight phi(random_positive(rng, {3}, 1.0));
  const Weight psi(random_positive(rng, {3}, 1.0));
  EXPECT_LE(cocycle_chain_residual(psi, phi, 0.0, 0.7), 1e-15);
  EXPECT_LE(cocycle_chain_residual(psi, phi, 0.7, 0.7), 1e-10);
}

TEST(ConjugationGap, MatchesBruteForce) {
  Rng rng(60);
  const Element a(std::vector<Matrix>{random_unitary(rng, 3), random_unitary(rng, 2)});
  const Element b(std::vector<Matrix>{random_unitary(rng, 3), random_unitary(rng, 2)});
  double brute = 0.0;
  for (const Element& e : algebra_of(a).basis()) brute = std::max(brute, (a * e * a.adjoint() - b * e * b.adjoint()).norm());
  EXPECT_NEAR(conjugation_gap(a, b), brute, 1e-12);
  EXPECT_LE(conjugation_gap(a, Complex(0.6, 0.8) * a), 1e-15);
}

}  // namespace
}  // namespace rnkit
