#pragma once

#include <stdexcept>
#include <string>

namespace wfdrift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid, initial condition, or run configuration violates its preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear system could not be solved (zero or vanishing pivot).
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exceeded its refinement cap.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace wfdrift
