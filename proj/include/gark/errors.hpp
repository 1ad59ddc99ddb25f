#pragma once

#include <stdexcept>
#include <string>

namespace gark {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix was (numerically) singular where an inverse or solve was required.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

/// Dimensions of an argument do not match the expected shape.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

/// No stage evaluation order exists: some stage pair is mutually implicit.
class NotDecoupledError : public Error {
 public:
  explicit NotDecoupledError(const std::string& what) : Error(what) {}
};

/// Requested method name is not a known built-in.
class UnknownMethodError : public Error {
 public:
  explicit UnknownMethodError(const std::string& what) : Error(what) {}
};

/// A Newton iteration failed to converge.
class NewtonDivergenceError : public Error {
 public:
  explicit NewtonDivergenceError(const std::string& what) : Error(what) {}
};

/// A right-hand side was evaluated outside its domain of definition.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Adaptive step control drove the step size below the representable range.
class StepSizeUnderflowError : public Error {
 public:
  explicit StepSizeUnderflowError(const std::string& what) : Error(what) {}
};

/// Coefficient blocks do not have the structure required by an operation.
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what) : Error(what) {}
};

}  // namespace gark
