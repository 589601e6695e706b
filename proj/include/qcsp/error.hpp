#ifndef QCSP_ERROR_HPP
#define QCSP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcsp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its configured limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

/// A value or domain edit that would break a problem invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid problem, relation, assignment or strategy.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A property query that is malformed or has no definition for its family.
class InvalidQuery : public Error {
 public:
  using Error::Error;
};

/// Diagnostic for the text format and for expressions. Line and column are
/// 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace qcsp

#endif  // QCSP_ERROR_HPP
