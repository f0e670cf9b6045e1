#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "mpkc/modulus.hpp"
#include "mpkc/residue_matrix.hpp"

namespace mpkc {

/// Order-n multinacci sequence: t_0 = ... = t_{n-2} = 0, t_{n-1} = 1 and
///   t_{k+n} = t_k + t_{k+1} + ... + t_{k+n-1},
/// extended to negative k by solving the same relation for t_k.
///
/// Without a modulus, terms are exact integers (they leave 64 bits quickly;
/// tribonacci passes 2^63 around k = 75). With a modulus, terms are residues.
///
/// Terms are memoized behind a mutex; a sequence can be shared across threads.
class MultinacciSequence {
 public:
  explicit MultinacciSequence(int order);
  MultinacciSequence(int order, PrimeModulus modulus);

  MultinacciSequence(const MultinacciSequence& other);
  MultinacciSequence& operator=(const MultinacciSequence& other);
  MultinacciSequence(MultinacciSequence&&) noexcept;
  MultinacciSequence& operator=(MultinacciSequence&&) noexcept;
  ~MultinacciSequence();

  int order() const noexcept { return order_; }
  const std::optional<PrimeModulus>& modulus() const noexcept { return modulus_; }

  /// t_k; lies in [0, p) when a modulus is set, may be negative otherwise.
  BigInt term(std::int64_t k) const;

  /// t_k mod p. Throws InvalidParameter if the sequence has no modulus.
  Residue residue(std::int64_t k) const;

 private:
  struct Cache;

  int order_;
  std::optional<PrimeModulus> modulus_;
  std::unique_ptr<Cache> cache_;
};

/// F_n^k over Z_p: a member of the set of generalized Fibonacci powers.
class FibPower {
 public:
  int order() const noexcept { return order_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  const PrimeModulus& modulus() const noexcept { return matrix_.modulus(); }
  const ResidueMatrix& matrix() const noexcept { return matrix_; }

  friend bool operator==(const FibPower&, const FibPower&) = default;

 private:
  friend FibPower fib_power_formula(int, std::int64_t, PrimeModulus);

  FibPower(int order, std::int64_t exponent, ResidueMatrix matrix)
      : order_(order), exponent_(exponent), matrix_(std::move(matrix)) {}

  int order_;
  std::int64_t exponent_;
  ResidueMatrix matrix_;
};

/// The base matrix F_n: first row all ones, ones on the subdiagonal.
ResidueMatrix fib_base(int order, PrimeModulus modulus);

/// Builds F_n^k entry by entry from sequence terms. With 1-based (i, j),
///   entry(i, j) = t_{k+j-1-i} + ... + t_{k+n-1-i}   (n-j+1 terms),
/// so column 1 is t_{k+n-i} and column n is t_{k+n-1-i}. Any signed k.
/// Cost is O(|k| + n^3) additions and no matrix products.
FibPower fib_power_formula(int order, std::int64_t exponent, PrimeModulus modulus);
/// Same, validating `p` (deterministic Miller-Rabin).
FibPower fib_power_formula(int order, std::int64_t exponent, std::uint64_t p);

}  // namespace mpkc
