#pragma once

// Verifiers for the three Radon-Nikodym theorems. Each equivalence is
// checked as an implication pattern on finite grids: all conditions hold, or
// all fail. A pass is numerical evidence, not a proof.

#include <optional>
#include <string>
#include <vector>

#include "rnkit/construction.hpp"
#include "rnkit/report.hpp"

namespace rnkit {

enum class TheoremKind { rn1, rn2, rn3 };

const char* to_string(TheoremKind kind);
TheoremKind theorem_kind_from_string(const std::string& s);

struct TheoremInputs {
  Weight phi;
  Weight psi;
  /// rn1: the pair (delta, lambda) under test. rn3 on a probe: the candidate delta.
  std::optional<InvariancePair> pair;
  double lambda0 = 1.0;  // rn3
  /// When set, all residuals are evaluated on this vector (testbed).
  std::optional<BlockVector> probe;
  Expectation expect = Expectation::hold;
  double tolerance = 1e-10;
  std::vector<double> t_grid = {-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> s_grid = {-1.0, -0.5, 0.5, 1.0};
};

struct TheoremResult {
  std::vector<Record> records;
  std::string pattern;  // "all-pass" | "all-fail" | "mixed"
};

TheoremResult verify_theorem(TheoremKind kind, const TheoremInputs& inputs);

}  // namespace rnkit
