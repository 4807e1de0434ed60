#pragma once

#include <stdexcept>
#include <string>

namespace wigmaj {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A polynomial degree or table size exceeded the compiled-in cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Distribution masses are missing or do not match.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Two operands use incompatible representations (e.g. different grids).
class RepresentationError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A certification step could not be verified numerically.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, double max_error)
      : Error(what), max_error_(max_error) {}
  double max_error() const noexcept { return max_error_; }

 private:
  double max_error_;
};

// Rejection sampling ran out of budget.
class SamplingBudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace wigmaj
