#pragma once

#include <stdexcept>
#include <string>

namespace aquafill {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed files, broken invariants, unusable arguments.
// The CLI maps these to exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

// Resource guards tripped by instances that are too expensive to process
// exactly. The CLI maps these to exit code 2.
struct GuardError : Error {
  using Error::Error;
};

struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

struct UnequalLength : ValidationError {
  using ValidationError::ValidationError;
};

// Majorization comparisons require equal totals.
struct UnequalSums : ValidationError {
  using ValidationError::ValidationError;
};

struct EmptyNeighborhood : ValidationError {
  using ValidationError::ValidationError;
};

struct NonpositiveQuantity : ValidationError {
  using ValidationError::ValidationError;
};

struct IndexOutOfRange : ValidationError {
  using ValidationError::ValidationError;
};

// A transform produced an arrival with no usable neighbors.
struct DegenerateOutput : ValidationError {
  using ValidationError::ValidationError;
};

struct NotNested : ValidationError {
  using ValidationError::ValidationError;
};

// A policy returned an allocation that is not a point of the arrival's
// simplex: wrong support, negative mass, or wrong total.
struct PolicyInfeasibleOutput : ValidationError {
  using ValidationError::ValidationError;
};

// Exact expectation was requested for a policy without finite support.
struct ExactUnavailable : ValidationError {
  using ValidationError::ValidationError;
};

struct UnsupportedDimension : ValidationError {
  using ValidationError::ValidationError;
};

struct InvalidParameter : ValidationError {
  using ValidationError::ValidationError;
};

struct UnknownObjective : ValidationError {
  using ValidationError::ValidationError;
};

struct NotConcaveNondecreasing : ValidationError {
  using ValidationError::ValidationError;
};

struct NotHomogeneous : ValidationError {
  using ValidationError::ValidationError;
};

// Hindsight optimization enumerates node subsets; refuse instances past the
// configured width instead of hanging.
struct InstanceTooLarge : GuardError {
  using GuardError::GuardError;
};

// Exact expectation walked more policy branches than the configured cap.
struct BranchLimitExceeded : GuardError {
  using GuardError::GuardError;
};

}  // namespace aquafill
