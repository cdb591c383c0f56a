#pragma once

#include <stdexcept>
#include <string>

namespace liftlab {

// A caller violated a documented precondition or parameter guard.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input does not satisfy the hypotheses a construction relies on (for
// example a moment vector that is not Lasserre-feasible).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative numerical method ran out of its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liftlab
