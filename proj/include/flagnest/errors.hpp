#pragma once

#include <stdexcept>
#include <string>

namespace flagnest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed wire-format text (diagram strings, polynomials, partitions).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input outside the supported mathematical domain.
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// A folding that carries metadata only and cannot be used for tag checks.
class UnsupportedFolding : public UnsupportedInput {
 public:
  using UnsupportedInput::UnsupportedInput;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An octonion with vanishing norm was supplied where an invertible one is needed.
class NonInvertibleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A point that does not lie on the five-dimensional quadric.
class NotOnQuadricError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Two independent routes disagreed; indicates a bug, never a user error.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace flagnest
