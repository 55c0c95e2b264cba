#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rnkit/cocycle.hpp"
#include "rnkit/errors.hpp"
#include "rnkit/random.hpp"

namespace rnkit {
namespace {

Element diag(std::initializer_list<double> values) {
  RealVector l(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l(i++) = v;
  return Element({Matrix(l.cast<Complex>().asDiagonal())});
}

PositiveElement diag_positive(std::initializer_list<double> values) {
  RealVector l(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l(i++) = std::log(v);
  return PositiveElement::from_spectral({Matrix::Identity(l.size(), l.size())}, {l});
}

const BlockAlgebra k2 = BlockAlgebra::build({2});

// Commuting Hermitian pair with spectra in [-1, 1] sharing a random eigenbasis.
std::pair<Element, Element> random_generators(Rng& rng, const std::vector<int>& dims) {
  std::vector<Matrix> d, l;
  for (int n : dims) {
    const Matrix v = random_unitary(rng, n);
    RealVector a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a(i) = rng.uniform(-1, 1);
      b(i) = rng.uniform(-1, 1);
    }
    d.emplace_back(v * a.cast<Complex>().asDiagonal() * v.adjoint());
    l.emplace_back(v * b.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return {Element(d), Element(l)};
}

TEST(CocyclePath, GeneratorFormClosedForms) {
  const CocyclePath zero = CocyclePath::from_generators(k2.zero(), k2.zero());
  EXPECT_EQ((zero.at(1.7) - k2.identity()).norm(), 0.0);

  const CocyclePath d = CocyclePath::from_generators(diag({std::log(3.0), 0.0}), k2.zero());
  const double t = 0.9;
  EXPECT_NEAR(std::abs(d.at(t).block(0)(0, 0) - std::exp(Complex(0, t * std::log(3.0)))), 0.0, 1e-15);

  const CocyclePath l = CocyclePath::from_generators(k2.zero(), k2.identity());
  EXPECT_LE((l.at(t) - std::exp(Complex(0, t * t / 2)) * k2.identity()).norm(), 1e-15);
}

TEST(CocyclePath, GeneratorFormMatchesTaylorExponential) {
  Rng rng(80);
  const auto [D, L] = random_generators(rng, {3});
  const double t = 1.4;
  const Matrix want = oracle::expm(Complex(0, 1) * (t * D.block(0) + t * t / 2 * L.block(0)));
  EXPECT_LE(operator_norm(CocyclePath::from_generators(D, L).at(t).block(0) - want), 1e-13);
}

TEST(CocyclePath, Errors) {
  Rng rng(81);
  EXPECT_THROW(CocyclePath::from_generators(diag({1, 2}), random_hermitian(rng, {2}, -1, 1)), InvalidArgument);
  EXPECT_THROW(CocyclePath::from_generators(random_element(rng, {2}), k2.zero()), InvalidArgument);
  EXPECT_THROW(CocyclePath::from_samples({0.5, 1.0}, {k2.identity(), k2.identity()}), InvalidArgument);
  EXPECT_THROW(CocyclePath::from_samples({0.0, 0.0}, {k2.identity(), k2.identity()}), InvalidArgument);
  EXPECT_THROW(CocyclePath::from_samples({0.0, 1.0}, {k2.identity(), 2.0 * k2.identity()}), InvalidArgument);
  EXPECT_THROW(CocyclePath::from_samples({0.0}, {k2.identity(), k2.identity()}), InvalidArgument);
  const CocyclePath s = synth_path(k2.zero(), k2.zero(), {0.0, 1.0});
  EXPECT_THROW(s.at(0.5), InvalidArgument);
}

TEST(Grids, LinearAndMerge) {
  const auto g = linear_grid(0.0, 1.0, 0.05);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.back(), 1.0);
  const auto m = merge_grids({0.0, 0.5, 1.0}, {0.5 + 1e-14, 2.0});
  EXPECT_EQ(m.size(), 4u);
  EXPECT_THROW(linear_grid(1.0, 0.0, 0.1), InvalidArgument);
}

// Property: fitting a synthesized path recovers its generators.
TEST(FitGenerators, RecoversSynthesizedGenerators) {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    Rng rng(seed);
    const auto [D, L] = random_generators(rng, {2, 3});
    const GeneratorFit fit = fit_generators(synth_path(D, L, linear_grid(0.0, 1.0, 0.05)));
    EXPECT_LE((fit.D - D).frobenius_norm(), 1e-10) << seed;
    EXPECT_LE((fit.L - L).frobenius_norm(), 1e-10) << seed;
    EXPECT_LE(fit.residual, 1e-10) << seed;
  }
}

TEST(FitGenerators, DiagonalAndTrivialPaths) {
  const GeneratorFit one = fit_generators(synth_path(k2.zero(), k2.zero(), linear_grid(0.0, 1.0, 0.25)));
  EXPECT_LE(one.D.norm() + one.L.norm(), 1e-15);

  const CocyclePath d = CocyclePath::sample(linear_grid(0.0, 1.0, 0.1), [](double t) {
    return diag({0, 0}) + Element({Matrix(Eigen::Vector2cd(std::exp(Complex(0, t * std::log(3.0))), 1.0).asDiagonal())});
  });
  const GeneratorFit fit = fit_generators(d);
  EXPECT_LE((fit.D - diag({std::log(3.0), 0})).norm(), 1e-12);
  EXPECT_LE(fit.L.norm(), 1e-11);

  const Element D = diag({0.2, -0.4});
  const Element L = diag({0.2, 0.2});
  const GeneratorFit f2 = fit_generators(synth_path(D, L, linear_grid(0.0, 1.0, 0.05)));
  EXPECT_LE((f2.D - D).norm() + (f2.L - L).norm(), 1e-10);
}

TEST(FitGenerators, Errors) {
  // eigenphase 2 per unit step violates the pi/2 branch guard
  const CocyclePath big = synth_path(2.0 * k2.identity(), k2.zero(), {0.0, 1.0, 2.0, 3.0});
  EXPECT_THROW(fit_generators(big), NumericalFailure);
  const CocyclePath two = synth_path(k2.zero(), k2.zero(), {0.0, 0.5, 1.0});
  EXPECT_THROW(fit_generators(two), InvalidArgument);
}

TEST(ExtractPair, SyntheticGenerators) {
  const Element D = diag({std::log(3.0), 0.0});
  const Element L = diag({0.2, 0.2});
  const std::vector<double> ts{-1.0, 0.25, 0.5, 1.5};
  const ExtractedPair e = extract_pair(synth_path(D, L, extraction_nodes(ts)), ts);
  ASSERT_EQ(e.t.size(), ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    EXPECT_LE((e.lambda_it[i] - std::exp(Complex(0, 0.2 * t)) * k2.identity()).norm(), 1e-12);
    EXPECT_LE((e.delta_it[i] - CocyclePath::from_generators(D, k2.zero()).at(t)).norm(), 1e-12);
  }
}

TEST(ExtractPair, GroupPathAndTrivialPath) {
  const Element D = diag({std::log(3.0), 0.0});
  const std::vector<double> ts{0.5, 1.0};
  const CocyclePath u = synth_path(D, k2.zero(), extraction_nodes(ts));
  const ExtractedPair e = extract_pair(u, ts);
  for (size_t i = 0; i < ts.size(); ++i) {
    EXPECT_LE((e.lambda_it[i] - k2.identity()).norm(), 1e-14);
    EXPECT_LE((e.delta_it[i] - u.at(ts[i])).norm(), 1e-14);
  }
  const ExtractedPair one = extract_pair(synth_path(k2.zero(), k2.zero(), extraction_nodes(ts)), ts);
  for (size_t i = 0; i < ts.size(); ++i) EXPECT_EQ((one.delta_it[i] - k2.identity()).norm(), 0.0);
  EXPECT_THROW(extract_pair(synth_path(D, k2.zero(), {0.0, 0.5, 1.0}), ts), InvalidArgument);
}

TEST(Bicharacter, ScalarGeneratorClosedForm) {
  const double beta = 0.3;
  const auto grid = linear_grid(-2.0, 2.0, 0.5);
  const CocyclePath u = synth_path(diag({0.4, -0.2}), beta * k2.identity(), grid);
  const auto sg = linear_grid(-1.0, 1.0, 0.5);
  const BicharacterTable w = bicharacter(u, sg, sg);
  for (size_t i = 0; i < sg.size(); ++i)
    for (size_t j = 0; j < sg.size(); ++j)
      EXPECT_LE((w.w[i][j] - std::exp(Complex(0, sg[i] * sg[j] * beta)) * k2.identity()).norm(), 1e-13);
  const BicharacterResiduals r = bicharacter_residuals(w);
  EXPECT_LE(r.additivity_s, 1e-13);
  EXPECT_LE(r.additivity_t, 1e-13);
  EXPECT_LE(r.centrality, 1e-14);
  EXPECT_THROW(bicharacter(u, {2.0}, {1.0}), InvalidArgument);
}

TEST(Bicharacter, CentralAndNonCentralL) {
  const BlockAlgebra a23 = BlockAlgebra::build({2, 3});
  const auto proj = centre_projectors(a23);
  const Element L = 0.3 * proj[0] - 0.1 * proj[1];
  Rng rng(82);
  const auto [D, unused] = random_generators(rng, {2, 3});
  const Element Dc = D;
  const auto grid = linear_grid(-2.0, 2.0, 0.5);
  const auto sg = linear_grid(-1.0, 1.0, 0.5);
  const BicharacterResiduals central = bicharacter_residuals(bicharacter(synth_path(Dc, L, grid), sg, sg));
  EXPECT_LE(central.additivity_s, 1e-10);
  EXPECT_LE(central.additivity_t, 1e-10);
  EXPECT_LE(central.centrality, 1e-12);

  const CocyclePath nc = synth_path(k2.zero(), diag({0.3, -0.1}), grid);
  const BicharacterTable w = bicharacter(nc, {1.0}, {1.0});
  EXPECT_GE(centrality_defect(w.w[0][0]), 0.1);
  // |e^{0.3i} - e^{-0.1i}| = 2 sin(0.2)
  EXPECT_NEAR(centrality_defect(w.w[0][0]), 2.0 * std::sin(0.2), 1e-14);
}

TEST(FlowsCommute, Cases) {
  const Weight phi(diag_positive({1, 2}));
  EXPECT_LE(flows_commute_residual(phi, Weight(diag_positive({3, 1})), 1.0, 1.0), 1e-15);
  EXPECT_LE(flows_commute_residual(phi, phi, 0.4, -0.7), 1e-15);
  Rng rng(83);
  const Weight psi(random_positive(rng, {2}, 1.0));
  EXPECT_GT(flows_commute_residual(phi, psi, 1.0, 1.0), 1e-3);
}

TEST(Eigenoperator, HandValues) {
  const Weight phi(diag_positive({1, 2}));
  const Element e12 = k2.matrix_unit(0, 0, 1);
  const EigenoperatorResidual r = eigenoperator_residual(phi, e12, 0.5);
  EXPECT_LE(r.weight_side, 1e-15);
  EXPECT_LE(r.flow_side, 1e-15);
  const EigenoperatorResidual one = eigenoperator_residual(phi, k2.identity(), 1.0);
  EXPECT_LE(one.weight_side + one.flow_side, 1e-15);
  const EigenoperatorResidual wrong = eigenoperator_residual(phi, e12, 1.0);
  EXPECT_NEAR(wrong.weight_side, 1.0, 1e-15);
  EXPECT_GT(wrong.flow_side, 0.0);
  EXPECT_THROW(eigenoperator_residual(phi, e12, 0.0), InvalidArgument);
}

TEST(ScalarInvariance, SameWeightAndRigidity) {
  Rng rng(84);
  const Weight phi(random_positive(rng, {3}, 1.0));
  const ScalarInvarianceResidual r = scalar_invariance_residual(phi, phi, 1.0, 0.7);
  EXPECT_LE(r.r1 + r.r2, 1e-12);
  const Weight golden(diag_positive({1, 2}));
  EXPECT_GT(scalar_invariance_residual(golden, golden, 2.0, 1.0).r1, 0.1);
  EXPECT_THROW(scalar_invariance_residual(phi, phi, -1.0, 0.5), InvalidArgument);
}

TEST(RigidityWitness, NontrivialLambdaIsVisible) {
  const Weight phi(diag_positive({1, 2}));
  const auto t = linear_grid(0.0, 10.0, 0.05);
  EXPECT_LE(rigidity_witness(phi, diag_positive({3, 1}), diag_positive({1, 1}), {0.5, 1.0}, t), 1e-15);
  EXPECT_GE(rigidity_witness(phi, diag_positive({3, 1}), PositiveElement::scalar(k2, 2.0), {0.5, 1.0}, t), 0.1);
}

}  // namespace
}  // namespace rnkit
