#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mpkc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a precondition (non-prime modulus,
/// order below 2, zero length, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Operands have different dimensions or moduli.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix(std::uint64_t determinant, std::uint64_t modulus)
      : Error("matrix is singular: det = " + std::to_string(determinant) +
              " mod " + std::to_string(modulus)),
        determinant_(determinant) {}

  std::uint64_t determinant() const noexcept { return determinant_; }

 private:
  std::uint64_t determinant_;
};

/// The commutation hypothesis of a nested block sum does not hold.
class CommutationViolation : public Error {
 public:
  using Error::Error;
};

/// A derived encryption key is not invertible; pick another session secret.
class DegenerateKey : public Error {
 public:
  using Error::Error;
};

class UnsupportedSymbol : public Error {
 public:
  UnsupportedSymbol(char symbol, std::size_t position)
      : Error("unsupported symbol '" + std::string(1, symbol) +
              "' at position " + std::to_string(position)),
        symbol_(symbol),
        position_(position) {}

  char symbol() const noexcept { return symbol_; }
  std::size_t position() const noexcept { return position_; }

 private:
  char symbol_;
  std::size_t position_;
};

/// Malformed key or message document. `line` is 1-based; 0 means the error
/// concerns the document as a whole (e.g. a missing field).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + " [" + field + "]: " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// A bounded search exceeded its configured step cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace mpkc
