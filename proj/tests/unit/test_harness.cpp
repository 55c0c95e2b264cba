#include <gtest/gtest.h>

#include <filesystem>

#include "rnkit/harness/scenario.hpp"
#include "rnkit/harness/serialize.hpp"
#include "rnkit/harness/suite.hpp"

namespace rnkit::harness {
namespace {

std::string golden(const std::string& name) { return std::string(RNKIT_SCENARIO_DIR) + "/" + name; }

std::string message_of(const std::string& text) {
  try {
    parse_scenario_text(text, "test.json");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return {};
}

const char* minimal = R"({
  "schema": "rnkit.scenario/1",
  "name": "m",
  "seed": 1,
  "algebra": {"blocks": [2]},
  "weight": {"kind": "diag", "values": [[1, 2]]},
  "suites": ["cocycle-algebra"]
})";

TEST(Scenario, ParsesEveryGolden) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(RNKIT_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(parse_scenario(entry.path().string())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 8);
}

TEST(Scenario, GoldenContents) {
  const Scenario pt = parse_scenario(golden("pt-exact.json"));
  EXPECT_EQ(pt.blocks, std::vector<int>{2});
  ASSERT_TRUE(pt.pair.has_value());
  EXPECT_EQ(pt.pair->mode, Mode::exact);
  const Scenario w = parse_scenario(golden("weyl-scalar.json"));
  ASSERT_TRUE(w.testbed.has_value());
  EXPECT_EQ(w.testbed->N, 256);
  EXPECT_EQ(w.testbed->L_box, 16.0);
}

TEST(Scenario, Diagnostics) {
  EXPECT_NE(message_of("").find("line"), std::string::npos);
  EXPECT_NE(message_of("{\n  \"schema\": \n}").find("line 3"), std::string::npos);
  std::string text = minimal;
  EXPECT_TRUE(message_of(text).empty());
  EXPECT_NE(message_of(std::string(text).replace(text.find("\"seed\""), 6, "\"sneed\"")).find("sneed"),
            std::string::npos);
  EXPECT_NE(message_of(std::string(text).replace(text.find("cocycle-algebra"), 15, "cocycle-algebro")).find("suite"),
            std::string::npos);
  EXPECT_FALSE(message_of(std::string(text).replace(text.find("[[1, 2]]"), 8, "[[1, -2]]")).empty());
  EXPECT_FALSE(message_of(std::string(text).replace(text.find("rnkit.scenario/1"), 16, "rnkit.scenario/9")).empty());
  EXPECT_THROW(parse_scenario("/nonexistent/scenario.json"), InvalidArgument);
}

TEST(Scenario, TestbedRejectsFiniteWeight) {
  const std::string text = R"({
    "schema": "rnkit.scenario/1", "name": "bad", "seed": 0,
    "algebra": {"testbed": {"case": "scalar", "N": 64, "L_box": 8}},
    "weight": {"kind": "diag", "values": [[1]]},
    "suites": ["weyl-invariance"]
  })";
  EXPECT_FALSE(message_of(text).empty());
}

TEST(Suite, PtExactGoldenPassesAtExactTolerance) {
  const Report r = run_suite(parse_scenario(golden("pt-exact.json")));
  EXPECT_EQ(r.verdict, "pass");
  for (const Record& rec : r.records) {
    EXPECT_NE(rec.status, "fail") << rec.id;
    if (rec.id.rfind("pt-exact:", 0) == 0) EXPECT_LE(rec.max_residual, 1e-10) << rec.id;
  }
}

TEST(Suite, RigidityScenarioPassesBecauseItFails) {
  const Report r = run_suite(parse_scenario(golden("rigidity-witness.json")));
  EXPECT_EQ(r.verdict, "pass");
  bool witnessed = false;
  for (const Record& rec : r.records)
    if (rec.expect == Expectation::violate && rec.max_residual >= 0.1) witnessed = true;
  EXPECT_TRUE(witnessed);
}

TEST(Suite, TinyToleranceFailsWithCounterexample) {
  RunOptions o;
  o.tolerance = 1e-30;
  const Report r = run_suite(parse_scenario(golden("random-3block.json")), o);
  EXPECT_EQ(r.verdict, "fail");
  bool has_point = false;
  for (const Record& rec : r.records)
    if (rec.status == "fail" && rec.counterexample) has_point = true;
  EXPECT_TRUE(has_point);
  EXPECT_NE(report_to_text(r).find("\xE2\x9C\x97"), std::string::npos);
}

TEST(Report, JsonIsDeterministicAndRoundTrips) {
  const Scenario s = parse_scenario(golden("random-3block.json"));
  const std::string a = report_to_json(run_suite(s));
  const std::string b = report_to_json(run_suite(s));
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_to_json(report_from_json(a)), a);
  EXPECT_THROW(report_from_json("{\"schema\": \"rnkit.report/1\", \"extra\": 1}"), InvalidArgument);
}

TEST(PathFile, RoundTripAndDecompose) {
  const BlockAlgebra a = BlockAlgebra::build({2, 1});
  const Element D = 0.4 * centre_projectors(a)[0] - 0.3 * centre_projectors(a)[1];
  const Element L = 0.1 * a.identity();
  const CocyclePath u = synth_path(D, L, linear_grid(0.0, 1.0, 0.1));
  const CocyclePath back = path_from_json(path_to_json(u));
  EXPECT_EQ(path_to_json(back), path_to_json(u));
  const GeneratorFit fit = fit_generators(back);
  EXPECT_LE((fit.D - D).norm(), 1e-10);
  EXPECT_LE((fit.L - L).norm(), 1e-10);
  EXPECT_THROW(path_from_json(read_file(std::string(RNKIT_TEST_DATA_DIR) + "/unknown-key.json")), InvalidArgument);
}

TEST(Materialize, SeedControlsRandomWeights) {
  const Scenario s = parse_scenario(golden("random-3block.json"));
  const Materialized a = materialize(s, s.seed);
  const Materialized b = materialize(s, s.seed);
  const Materialized c = materialize(s, s.seed + 1);
  EXPECT_EQ((a.phi.density().element() - b.phi.density().element()).norm(), 0.0);
  EXPECT_GT((a.phi.density().element() - c.phi.density().element()).norm(), 0.1);
  EXPECT_TRUE(a.pair.has_value());
}

}  // namespace
}  // namespace rnkit::harness
