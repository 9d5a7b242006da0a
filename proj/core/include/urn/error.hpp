#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace urn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The instance is too large for an exact method (enumeration, subset sums).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The arbitrary-precision evaluator could not certify its result within
/// the configured bit budget.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A statistical check cannot reach its signal-to-noise requirement with the
/// requested number of samples.
class InsufficientSamples : public Error {
 public:
  InsufficientSamples(const std::string& what, std::uint64_t required)
      : Error(what), required_(required) {}
  std::uint64_t required_samples() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

}  // namespace urn
