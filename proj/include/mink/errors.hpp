#pragma once

#include <stdexcept>
#include <string>

namespace mink {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of budget before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Requested scale is finer than the representation can resolve.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Tube data unusable for estimation (non-positive or non-finite values).
class DataError : public Error {
 public:
  DataError(const std::string& what, double eps) : Error(what), eps_(eps) {}
  double eps() const noexcept { return eps_; }

 private:
  double eps_;
};

/// Operation not supported for the given backend or configuration.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mink
