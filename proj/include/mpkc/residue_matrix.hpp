#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "mpkc/modulus.hpp"

namespace mpkc {

using RowVector = std::vector<Residue>;

/// Square matrix over Z_p. Entries are always kept in [0, p).
class ResidueMatrix {
 public:
  /// Zero matrix. Throws InvalidParameter if dim == 0.
  ResidueMatrix(PrimeModulus modulus, std::size_t dim);

  static ResidueMatrix identity(PrimeModulus modulus, std::size_t dim);

  /// Builds from row-major residues; rejects ragged input and entries >= p.
  static ResidueMatrix from_rows(PrimeModulus modulus,
                                 const std::vector<std::vector<std::uint64_t>>& rows);
  static ResidueMatrix from_rows(
      PrimeModulus modulus,
      std::initializer_list<std::initializer_list<std::uint64_t>> rows);

  const PrimeModulus& modulus() const noexcept { return modulus_; }
  std::size_t dim() const noexcept { return dim_; }

  Residue operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }
  /// Stores `value` reduced mod p.
  void set(std::size_t row, std::size_t col, std::uint64_t value) noexcept {
    entries_[row * dim_ + col] = value % modulus_.value();
  }
  std::span<const Residue> row(std::size_t r) const noexcept {
    return {entries_.data() + r * dim_, dim_};
  }
  std::vector<std::vector<std::uint64_t>> rows() const;

  bool is_identity() const noexcept;
  bool is_zero() const noexcept;

  Residue determinant() const;

  ResidueMatrix& operator+=(const ResidueMatrix& other);
  ResidueMatrix& operator-=(const ResidueMatrix& other);
  ResidueMatrix scaled(Residue factor) const;

  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;

 private:
  PrimeModulus modulus_;
  std::size_t dim_;
  std::vector<Residue> entries_;
};

ResidueMatrix operator+(ResidueMatrix a, const ResidueMatrix& b);
ResidueMatrix operator-(ResidueMatrix a, const ResidueMatrix& b);

/// Product a·b. Every call bumps the thread-local multiplication counter.
ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b);
inline ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) {
  return mat_mul(a, b);
}

/// Square-and-multiply. Negative exponents invert first.
ResidueMatrix mat_pow(const ResidueMatrix& a, std::int64_t e);

/// Gauss-Jordan inverse. Throws SingularMatrix carrying det mod p.
ResidueMatrix mat_inv(const ResidueMatrix& a);

/// Row vector times matrix, v·a.
RowVector row_times(std::span<const Residue> v, const ResidueMatrix& a);

std::ostream& operator<<(std::ostream& os, const ResidueMatrix& m);

/// Number of mat_mul calls made on the current thread since it started.
std::uint64_t matrix_multiplications() noexcept;

/// Counts mat_mul calls on this thread between construction and count().
class MultiplicationTally {
 public:
  MultiplicationTally() noexcept : start_(matrix_multiplications()) {}
  std::uint64_t count() const noexcept { return matrix_multiplications() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace mpkc
