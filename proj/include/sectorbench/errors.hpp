#pragma once

#include <stdexcept>
#include <string>

namespace sectorbench {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An element was expected to lie in an algebra or subspace but does not.
class MembershipError : public Error {
 public:
  using Error::Error;
};

class NotStarClosed : public Error {
 public:
  using Error::Error;
};

class NotFirstClass : public Error {
 public:
  using Error::Error;
};

class NoDiracStates : public Error {
 public:
  using Error::Error;
};

class InvalidCocycle : public Error {
 public:
  using Error::Error;
};

class ActionNotAutomorphic : public Error {
 public:
  using Error::Error;
};

class RadicalViolation : public Error {
 public:
  using Error::Error;
};

class SizeGuard : public Error {
 public:
  using Error::Error;
};

class WitnessFailure : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A computation that should succeed by construction did not; usually a tolerance problem.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

}  // namespace sectorbench
