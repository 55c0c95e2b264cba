#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rnkit/errors.hpp"
#include "rnkit/weyl.hpp"

namespace rnkit {
namespace {

using std::numbers::pi;

Vector gaussian(const WeylGrid& g, double shift) {
  Vector p(g.N);
  const double c = std::pow(pi, -0.25) * std::sqrt(g.spacing);
  for (int k = 0; k < g.N; ++k) p(k) = c * std::exp(-(g.gamma(k) + shift) * (g.gamma(k) + shift) / 2.0);
  return p;
}

TEST(WeylGrid, Arithmetic) {
  const WeylGrid g = build_grid(16, 8.0);
  EXPECT_EQ(g.spacing, 0.5);
  EXPECT_EQ(g.gamma(0), -4.0);
  EXPECT_EQ(g.gamma(15), 3.5);
  EXPECT_EQ(build_grid(256, 16.0).spacing, 1.0 / 16.0);
  EXPECT_THROW(build_grid(100, 8.0), InvalidArgument);
  EXPECT_THROW(build_grid(8, 8.0), InvalidArgument);
  EXPECT_THROW(build_grid(64, 0.0), InvalidArgument);
}

TEST(WeylGrid, DftIsUnitaryAndMatchesDirectFormula) {
  const WeylGrid g = build_grid(64, 8.0);
  const Matrix f = unitary_dft(g);
  EXPECT_LE(operator_norm(f.adjoint() * f - Matrix::Identity(64, 64)), 1e-13);
  for (int j : {0, 7, 40})
    for (int k : {3, 32, 63}) {
      const Complex want = std::exp(Complex(0, -g.freq(j) * g.gamma(k))) / 8.0;
      EXPECT_NEAR(std::abs(f(j, k) - want), 0.0, 1e-13);
    }
}

TEST(WeylOperators, ReachGuard) {
  EXPECT_THROW(weyl_operators(build_grid(64, 32.0)), InvalidArgument);
  EXPECT_NO_THROW(weyl_operators(build_grid(64, 24.0)));
}

TEST(WeylOperators, CanonicalCommutatorOnGaussian) {
  const WeylGrid g = build_grid(256, 16.0);
  const WeylOperators w = weyl_operators(g);
  const Vector p = gaussian(g, 0.0);
  const Matrix& P = w.P.block(0);
  const Matrix& Q = w.Q.block(0);
  const Complex c = p.dot((P * Q - Q * P) * p);
  EXPECT_NEAR(std::abs(c - Complex(0, 1)), 0.0, 1e-6);
}

TEST(WeylOperators, ExponentialsActAsTranslationAndPhase) {
  const WeylGrid g = build_grid(256, 16.0);
  const WeylOperators w = weyl_operators(g);
  const Vector p = gaussian(g, 0.0);
  for (double s : {0.3, -1.0, 0.8125}) {
    const Vector moved = w.K1.apply_power(Complex(0, s), {p})[0];
    EXPECT_LE((moved - gaussian(g, s)).norm(), 1e-10) << s;
  }
  const double t = 0.7;
  const Vector phased = w.H.apply_power(Complex(0, t), {p})[0];
  for (int k = 0; k < g.N; k += 17)
    EXPECT_NEAR(std::abs(phased(k) - std::exp(Complex(0, t * g.gamma(k))) * p(k)), 0.0, 1e-15);
}

TEST(WeylScalar, ConstructedDensityIsSymmetricProduct) {
  const WeylGrid g = build_grid(32, 8.0);
  const TestbedCase c = case_scenario(TestbedCaseId::scalar, g);
  const WeylOperators w = weyl_operators(g);
  const ConstructedWeight cw = construct_weight(c.phi, c.pair, Mode::approximate);
  const Matrix half = oracle::expm(0.5 * w.Q.block(0));
  const Matrix want = half * oracle::expm(w.P.block(0)) * half;
  EXPECT_LE(operator_norm(cw.density().element().block(0) - want), 1e-10 * operator_norm(want));
}

TEST(WeylInvariance, TrivialSlices) {
  const TestbedCase c = case_scenario(TestbedCaseId::scalar, build_grid(256, 16.0));
  EXPECT_LE(weyl_invariance_residual(c, 0.0, 0.9, c.probe), 1e-12);
  EXPECT_LE(weyl_invariance_residual(c, -0.6, 0.0, c.probe), 1e-12);
  EXPECT_LE(weyl_invariance_residual(c, 1.0, 1.0, c.probe), 1e-5);
}

TEST(WeylInvariance, RejectsProbeNearBoundary) {
  const WeylGrid g = build_grid(64, 4.0);
  const TestbedCase c = case_scenario(TestbedCaseId::scalar, g);
  EXPECT_GT(exterior_mass(g, c.probe), 1e-7);
  EXPECT_THROW(weyl_invariance_residual(c, 1.0, 1.0, c.probe), InvalidArgument);
}

TEST(WeylInvariance, ResidualFollowsBoxTail) {
  // wrap-around leakage falls off like the Gaussian tail at the box edge
  double previous = 1e300;
  for (double L : {8.0, 12.0, 16.0, 24.0}) {
    const TestbedCase c = case_scenario(TestbedCaseId::scalar, build_grid(256, L));
    const double r = weyl_invariance_residual(c, 1.0, 1.0, c.probe, false);
    EXPECT_LT(r, previous) << L;
    previous = r;
  }
  const TestbedCase small = case_scenario(TestbedCaseId::scalar, build_grid(128, 8.0));
  const TestbedCase big = case_scenario(TestbedCaseId::scalar, build_grid(256, 16.0));
  EXPECT_GE(weyl_invariance_residual(small, 1.0, 1.0, small.probe, false),
            10.0 * weyl_invariance_residual(big, 1.0, 1.0, big.probe, false));
}

TEST(WeylCases, LambdaCentrality) {
  const WeylGrid g = build_grid(64, 8.0);
  EXPECT_GE(centrality_defect(case_scenario(TestbedCaseId::factor, g).pair.lambda().element()), 0.5);
  EXPECT_LE(centrality_defect(case_scenario(TestbedCaseId::central, g).pair.lambda().element()), 1e-12);
  EXPECT_LE(centrality_defect(case_scenario(TestbedCaseId::scalar, g).pair.lambda().element()), 1e-12);
}

TEST(WeylCases, ProbesAreNormalized) {
  const WeylGrid g = build_grid(128, 16.0);
  for (TestbedCaseId id : {TestbedCaseId::scalar, TestbedCaseId::factor, TestbedCaseId::central})
    EXPECT_NEAR(norm(gaussian_probe(id, g)), 1.0, 1e-12) << to_string(id);
  EXPECT_THROW(testbed_case_from_string("torus"), InvalidArgument);
}

TEST(ConvergenceSweep, SingleRowHasNoFlags) {
  const SweepTable t = convergence_sweep(TestbedCaseId::scalar, {16}, {8.0});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_FALSE(t.invariance_monotone.has_value());
  EXPECT_FALSE(t.cocycle_monotone.has_value());
}

TEST(ConvergenceSweep, ScalarRowsShrinkWithBox) {
  const SweepTable t = convergence_sweep(TestbedCaseId::scalar, {128, 256}, {8.0, 16.0});
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].N, 128);
  EXPECT_EQ(t.rows[1].L_box, 16.0);
  EXPECT_TRUE(t.rows[0].scalar_r1.has_value());
  EXPECT_LE(t.rows[3].invariance, 1e-5);
  EXPECT_LE(t.rows[3].cocycle, 1e-3);
}

}  // namespace
}  // namespace rnkit
