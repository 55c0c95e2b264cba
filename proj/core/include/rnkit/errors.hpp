#pragma once

#include <stdexcept>
#include <string>

namespace rnkit {

/// Malformed input: shape mismatches, non-positive densities, missing grid nodes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not meet its accuracy contract
/// (quadrature budget, branch guard, Jacobi non-convergence, conditioning).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was requested in exact mode on data that is only
/// approximately admissible (for instance a non-trivial invariance factor
/// on a matrix algebra).
class ModeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rnkit
