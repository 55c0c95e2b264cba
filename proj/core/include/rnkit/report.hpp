#pragma once

// Verification records and reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rnkit {

enum class Relation { le, ge };
/// hold: the residual must satisfy the relation; violate: it must not
/// (expected-fail records); info: recorded only, never affects the verdict.
enum class Expectation { hold, violate, info };

const char* to_string(Relation r);
const char* to_string(Expectation e);

struct Counterexample {
  std::string point;
  double residual = 0.0;
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct Record {
  std::string id;
  std::string anchor;
  std::string grid;
  double max_residual = 0.0;  // NaN when the evaluation raised an error
  double tolerance = 0.0;
  Relation relation = Relation::le;
  Expectation expect = Expectation::hold;
  std::string status;  // "pass" | "fail" | "info"
  std::string note;
  std::optional<Counterexample> counterexample;
};

/// Whether the residual satisfies the relation (false for NaN).
bool relation_holds(const Record& r);
/// Fills status from residual, relation and expectation.
void settle(Record& r);

struct Report {
  std::string scenario;
  std::string version;
  std::uint64_t seed = 0;
  std::vector<Record> records;
  std::string verdict;  // "pass" | "fail"
};

/// Sets the verdict: pass iff no record has status "fail".
void finalize(Report& report);

}  // namespace rnkit
