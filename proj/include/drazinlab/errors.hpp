#pragma once

#include <stdexcept>
#include <string>

namespace drazinlab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class NotGroupInvertible : public Error {
 public:
  using Error::Error;
};

/// The rank plateau of a floating-point power sequence could not be
/// resolved at the configured tolerance.
class NumericalRankAmbiguous : public Error {
 public:
  using Error::Error;
};

/// The resolvent 1 - alpha*alpha^pi*(1 + bd + (bd)^2) was not invertible.
/// Never expected when the entwining conditions hold over an exact field.
class ResolventSingular : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string condition, const std::string& what)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class Exhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace drazinlab
