#pragma once

#include <stdexcept>
#include <string>

namespace ncx {

/// Base of every error raised by the library. Each subclass names one
/// failure family so callers (and the CLI exit-code mapping) can dispatch.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different coefficient domains, or an operation needs
/// a field and was handed a ring.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by a zero divisor or a non-unit.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Matrix or graded-object shapes do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold (non-acyclic input to a
/// contraction, an invalid homotopy witness, a malformed lifting square...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The twist parameters do not satisfy any of the three admissible regimes.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search over a residue ring would exceed the configured bound.
class EnumerationBoundError : public Error {
 public:
  using Error::Error;
};

/// Input document does not match the fixture schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path), message_(message) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_, message_;
};

}  // namespace ncx
