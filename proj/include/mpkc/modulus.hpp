#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace mpkc {

__extension__ using Wide = unsigned __int128;

using Residue = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// A prime modulus together with the field arithmetic of Z_p.
///
/// Construction is the single place where primality is checked; every type
/// holding a PrimeModulus may assume the field is well defined.
class PrimeModulus {
 public:
  /// Throws InvalidParameter if `p` is not prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    return a >= p_ - b ? a - (p_ - b) : a + b;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<Wide>(a) * b % p_);
  }
  Residue pow(Residue base, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero residue (Fermat). Throws InvalidParameter on 0.
  Residue inv(Residue a) const;

  Residue reduce(std::int64_t v) const noexcept;
  Residue reduce(const BigInt& v) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
};

}  // namespace mpkc
