#include "rnkit/report.hpp"

#include <cmath>

namespace rnkit {

const char* to_string(Relation r) { return r == Relation::le ? "le" : "ge"; }

const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::hold:
      return "hold";
    case Expectation::violate:
      return "violate";
    case Expectation::info:
      return "info";
  }
  return "hold";
}

bool relation_holds(const Record& r) {
  if (std::isnan(r.max_residual)) return false;
  return r.relation == Relation::le ? r.max_residual <= r.tolerance : r.max_residual >= r.tolerance;
}

void settle(Record& r) {
  if (r.expect == Expectation::info) {
    r.status = "info";
    return;
  }
  const bool holds = relation_holds(r);
  r.status = (holds == (r.expect == Expectation::hold)) ? "pass" : "fail";
}

void finalize(Report& report) {
  report.verdict = "pass";
  for (const auto& r : report.records)
    if (r.status == "fail") report.verdict = "fail";
}

}  // namespace rnkit
