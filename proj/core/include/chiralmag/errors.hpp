#pragma once

#include <stdexcept>
#include <string>

namespace chiralmag {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured capacity.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Grid sizes are invalid (even) or do not match.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// The requested field is not periodic with respect to the lattice.
class IncompatibleLattice : public Error {
 public:
  using Error::Error;
};

/// The requested state has vanishing amplitude.
class ZeroAmplitude : public Error {
 public:
  using Error::Error;
};

/// The symmetry class is not available on the given lattice.
class SymmetryMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace chiralmag
