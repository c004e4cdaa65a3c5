#pragma once

#include <stdexcept>
#include <string>

namespace twoball {

/// Base class for failures of a numerical procedure on valid input
/// (a bracket that does not close, an evaluation that lands on a pole).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A caller-supplied point violates an operation's precondition
/// (for example an off-curve point handed to the derivative decomposition).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace twoball
