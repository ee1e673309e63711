#pragma once

#include <stdexcept>
#include <string>

namespace caterlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside the region where an operation (or the claim it checks) is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreachable configuration (search regions, flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Requested work exceeds a hard cap, e.g. an n! scan beyond n_cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A numerical method failed or produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public NumericError {
 public:
  using NumericError::NumericError;
};

class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : NumericError(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// A computed value would falsify a proved statement.
///
/// Carries the offending inputs as a JSON string so the case can be replayed.
class ContradictionError : public Error {
 public:
  ContradictionError(const std::string& what, std::string provenance)
      : Error(what), provenance_(std::move(provenance)) {}

  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::string provenance_;
};

}  // namespace caterlab
