#pragma once

#include <stdexcept>
#include <string>

namespace qrg {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (negative coupling, bad site index,
// non-PSD density matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Integer result does not fit the machine range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// RG iteration overflowed to a non-finite coupling.
class SaturationError : public Error {
 public:
  SaturationError(int iteration, const std::string& what)
      : Error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

// A map or curve does not have the shape the algorithm relies on
// (no fixed point in the bracket, non-repulsive fixed point, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Roundoff beyond the tolerated slack; indicates a bug or a broken input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Extremum hit the edge of the search window.
class BoundaryExtremumError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qrg
