#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace igk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside a parameter domain, invalid sphere/simplex point, bad index.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Column is 1-based within the offending text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class NotKahlerError : public Error {
 public:
  using Error::Error;
};

// Bad command-line input, unknown family names, malformed config.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace igk
