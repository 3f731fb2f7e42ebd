#pragma once

#include <stdexcept>
#include <string>

namespace dgbdt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A linear system, inverse or Sylvester equation has no (well-conditioned)
/// solution.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point too close to a pole of a resolvent.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An iterative limit did not settle within its horizon.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must stay positive definite lost positivity numerically.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, int step)
      : Error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

/// Rejection sampling ran out of attempts.
class GenerationError : public Error {
 public:
  GenerationError(const std::string& what, int attempts)
      : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

}  // namespace dgbdt
