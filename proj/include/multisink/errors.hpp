#pragma once

#include <stdexcept>
#include <string>

namespace multisink {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method exhausted its budget before meeting its tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A bracket handed to the root finder does not enclose a sign change.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// No critical pressure exists for the requested gluing combination.
class NoRoot : public Error {
 public:
  using Error::Error;
};

/// The vorticity is requested too close to a knot ray, where it diverges.
class KnotSingularity : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil crosses a knot ray or the origin.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace multisink
