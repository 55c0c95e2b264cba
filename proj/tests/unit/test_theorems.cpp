#include <gtest/gtest.h>

#include <cmath>

#include "rnkit/errors.hpp"
#include "rnkit/random.hpp"
#include "rnkit/theorems.hpp"

namespace rnkit {
namespace {

PositiveElement diag_positive(std::initializer_list<double> values) {
  RealVector l(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l(i++) = std::log(v);
  return PositiveElement::from_spectral({Matrix::Identity(l.size(), l.size())}, {l});
}

TheoremInputs golden_inputs() {
  TheoremInputs in;
  in.phi = Weight(diag_positive({1, 2}));
  in.pair = InvariancePair::certify(in.phi, diag_positive({3, 1}), diag_positive({1, 1}), Mode::exact);
  in.psi = construct_weight(in.phi, *in.pair, Mode::exact).weight();
  return in;
}

bool no_failures(const TheoremResult& r) {
  for (const Record& rec : r.records)
    if (rec.status == "fail") return false;
  return true;
}

TEST(Rn1, ConstructedWeightPassesEveryCondition) {
  const TheoremResult r = verify_theorem(TheoremKind::rn1, golden_inputs());
  EXPECT_EQ(r.pattern, "all-pass");
  EXPECT_TRUE(no_failures(r));
  for (const Record& rec : r.records)
    if (rec.expect == Expectation::hold) EXPECT_LE(rec.max_residual, 1e-10) << rec.id;
}

TEST(Rn1, UnrelatedWeightFailsEveryCondition) {
  TheoremInputs in = golden_inputs();
  in.psi = Weight(diag_positive({5, 1}));
  in.expect = Expectation::violate;
  const TheoremResult r = verify_theorem(TheoremKind::rn1, in);
  EXPECT_EQ(r.pattern, "all-fail");
  EXPECT_TRUE(no_failures(r));
}

TEST(Rn1, NeedsPair) {
  TheoremInputs in = golden_inputs();
  in.pair.reset();
  EXPECT_THROW(verify_theorem(TheoremKind::rn1, in), InvalidArgument);
}

TEST(Rn2, CommutingDiagonalDensities) {
  TheoremInputs in = golden_inputs();
  const TheoremResult r = verify_theorem(TheoremKind::rn2, in);
  EXPECT_EQ(r.pattern, "all-pass");
  EXPECT_TRUE(no_failures(r));
}

TEST(Rn2, NonCommutingDensitiesFail) {
  TheoremInputs in = golden_inputs();
  Rng rng(90);
  in.psi = Weight(random_positive(rng, {2}, 1.0));
  in.expect = Expectation::violate;
  const TheoremResult r = verify_theorem(TheoremKind::rn2, in);
  EXPECT_EQ(r.pattern, "all-fail");
  EXPECT_TRUE(no_failures(r));
}

TEST(Rn2, RejectsProbe) {
  TheoremInputs in = golden_inputs();
  in.probe = BlockVector{Vector::Ones(2)};
  EXPECT_THROW(verify_theorem(TheoremKind::rn2, in), InvalidArgument);
}

TEST(Rn3, TrivialScalarOnFiniteAlgebra) {
  TheoremInputs in = golden_inputs();
  in.lambda0 = 1.0;
  const TheoremResult r = verify_theorem(TheoremKind::rn3, in);
  EXPECT_EQ(r.pattern, "all-pass");
  EXPECT_TRUE(no_failures(r));
}

TEST(Rn3, NontrivialScalarIsRigid) {
  TheoremInputs in = golden_inputs();
  in.lambda0 = 2.0;
  in.expect = Expectation::violate;
  const TheoremResult r = verify_theorem(TheoremKind::rn3, in);
  EXPECT_EQ(r.pattern, "all-fail");
  EXPECT_TRUE(no_failures(r));
  in.lambda0 = 0.0;
  EXPECT_THROW(verify_theorem(TheoremKind::rn3, in), InvalidArgument);
}

TEST(TheoremKind, Names) {
  EXPECT_EQ(theorem_kind_from_string("rn2"), TheoremKind::rn2);
  EXPECT_STREQ(to_string(TheoremKind::rn3), "rn3");
  EXPECT_THROW(theorem_kind_from_string("rn4"), InvalidArgument);
}

}  // namespace
}  // namespace rnkit
