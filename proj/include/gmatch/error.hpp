#pragma once

#include <stdexcept>
#include <string>

namespace gmatch {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (unknown vertex, size
/// mismatch, missing coordinates, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kMalformedDocument,
  kMissingCoordinate,
  kDanglingEdge,
  kUnreadableFile,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string &what)
      : Error(what), kind_(kind) {}

  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

}  // namespace gmatch
