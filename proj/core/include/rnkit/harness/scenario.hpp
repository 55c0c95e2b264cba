#pragma once

// Scenario files: strict JSON (schema "rnkit.scenario/1") describing an
// algebra, a weight, an optional pair and the suites to run.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rnkit/errors.hpp"
#include "rnkit/positive.hpp"
#include "rnkit/report.hpp"
#include "rnkit/weyl.hpp"

namespace rnkit::harness {

/// Malformed or invalid scenario text; the message carries the location.
class ScenarioError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct WeightSpec {
  std::string kind;  // "diag" | "matrix" | "random" | "exp-grid" | "balanced"
  std::vector<RealVector> diag;
  std::vector<Matrix> blocks;
  double spread = 1.0;  // random: log-spectrum in [-spread, spread]
  double lo = 0.0;      // exp-grid: log-spectrum evenly spaced on [lo, hi]
  double hi = 1.0;
  bool random_basis = false;
  std::vector<WeightSpec> parts;  // balanced: exactly two
};

struct PairSpec {
  std::string kind;  // "diag" | "matrix" | "commuting-random" | "scalar"
  std::vector<RealVector> delta_diag;
  std::vector<RealVector> lambda_diag;
  std::vector<Matrix> delta_blocks;
  std::vector<Matrix> lambda_blocks;
  double spread = 0.5;  // commuting-random and scalar: log-spread of delta
  double lambda = 1.0;  // scalar
  Mode mode = Mode::exact;
};

struct TestbedSpec {
  TestbedCaseId id = TestbedCaseId::scalar;
  int N = 256;
  double L_box = 16.0;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<int> blocks;            // finite algebra
  std::optional<TestbedSpec> testbed;  // or a Weyl testbed case
  std::optional<WeightSpec> weight;
  std::optional<WeightSpec> psi;
  std::optional<PairSpec> pair;
  std::optional<double> lambda0;
  Expectation expect = Expectation::hold;
  std::vector<std::string> suites;
  std::map<std::string, double> tolerances;
};

/// Suite names accepted in "suites".
const std::vector<std::string>& known_suites();

Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<scenario>");
Scenario parse_scenario(const std::string& path);

/// Builds the density described by a weight spec on the given block dims.
PositiveElement build_density(const WeightSpec& spec, const std::vector<int>& dims, std::uint64_t seed);

}  // namespace rnkit::harness
