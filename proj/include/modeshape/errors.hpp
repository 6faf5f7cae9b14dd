#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace modeshape {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or shape mismatch, non-finite input, or mixed conventions.
class ConformanceError : public Error {
 public:
  using Error::Error;
};

/// Invalid model or method parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Residual or Jacobian evaluation produced non-finite values.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class NoEquilibriumError : public Error {
 public:
  NoEquilibriumError(const std::string& what, double residual_norm)
      : Error(what), residual_norm_(residual_norm) {}
  [[nodiscard]] double residual_norm() const noexcept { return residual_norm_; }

 private:
  double residual_norm_;
};

/// Singular algebraic Jacobian g_y (the reduction to a state matrix needs it invertible).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The implicit stage matrix I - c*h*A is singular: 1/(c*h) is an eigenvalue of A.
class StepSizeSingularityError : public Error {
 public:
  StepSizeSingularityError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  [[nodiscard]] double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Newton failure inside one integration step.
class StepFailure : public Error {
 public:
  StepFailure(const std::string& what, std::string stage, double residual_norm)
      : Error(what), stage_(std::move(stage)), residual_norm_(residual_norm) {}
  [[nodiscard]] const std::string& stage() const noexcept { return stage_; }
  [[nodiscard]] double residual_norm() const noexcept { return residual_norm_; }

 private:
  std::string stage_;
  double residual_norm_;
};

/// Initial algebraic variables do not satisfy g(x0, y0) = 0.
class InitializationError : public Error {
 public:
  using Error::Error;
};

/// A quantity is undefined for the given input (zero eigenvalue, zero column, ...).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace modeshape
