#pragma once

#include <optional>

#include "rnkit/harness/scenario.hpp"
#include "rnkit/report.hpp"

namespace rnkit::harness {

struct RunOptions {
  std::optional<double> tolerance;  // overrides every hold tolerance
  std::optional<std::uint64_t> seed;
};

/// Weight, pair and testbed case described by a scenario. An inadmissible
/// pair leaves `pair` empty and explains why in `pair_error`.
struct Materialized {
  Weight phi;
  std::optional<Weight> psi;
  std::optional<InvariancePair> pair;
  std::string pair_error;
  std::optional<TestbedCase> testbed;
};

Materialized materialize(const Scenario& s, std::uint64_t seed);

/// Runs every suite in order. Numerical failures inside a suite become
/// failed records; scenario-level errors (unbuildable inputs) throw.
Report run_suite(const Scenario& s, const RunOptions& options = {});

/// Default tolerance of a suite.
double default_tolerance(const std::string& suite);

}  // namespace rnkit::harness
