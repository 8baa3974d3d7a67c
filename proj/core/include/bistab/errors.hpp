#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bistab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed network text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// A structurally valid network that violates a model constraint
/// (equal sides, dead species, out-of-range index).
class InvalidNetwork : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the open domain interval of g.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConstructionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace bistab
