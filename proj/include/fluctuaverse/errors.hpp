#pragma once

#include <stdexcept>
#include <string>

namespace fluctuaverse {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an input value was violated (sign, range, count).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic produced a NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Kerr-Newman discriminant is negative: a classical horizon, not a naked
/// singularity.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class UnknownConstant : public Error {
 public:
  using Error::Error;
};

/// Malformed override file or invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Stochastic step too coarse for the requested timestep.
class StabilityError : public Error {
 public:
  using Error::Error;
};

class EmptyWindowError : public Error {
 public:
  using Error::Error;
};

}  // namespace fluctuaverse
