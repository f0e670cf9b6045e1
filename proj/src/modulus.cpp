#include "mpkc/modulus.hpp"

#include <array>
#include <string>

#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  // These twelve bases are a deterministic witness set below 3.3 * 10^24.
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw InvalidParameter("modulus " + std::to_string(p) + " is not prime");
}

Residue PrimeModulus::pow(Residue base, std::uint64_t e) const noexcept {
  return powmod(base, e, p_);
}

Residue PrimeModulus::inv(Residue a) const {
  if (a % p_ == 0) throw InvalidParameter("zero has no inverse");
  return powmod(a, p_ - 2, p_);
}

Residue PrimeModulus::reduce(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  // -(v+1) avoids overflow at INT64_MIN.
  const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return neg(mag % p_);
}

Residue PrimeModulus::reduce(const BigInt& v) const {
  BigInt r = v % p_;
  if (r < 0) r += p_;
  return r.convert_to<std::uint64_t>();
}

}  // namespace mpkc
