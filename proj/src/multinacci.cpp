#include "mpkc/multinacci.hpp"

#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

void require_order(int order) {
  if (order < 2) throw InvalidParameter("sequence order must be >= 2, got " + std::to_string(order));
}

// Terms t_k for k >= 0 in `forward`, t_{-1}, t_{-2}, ... in `backward`.
// `add`/`sub` are the ring operations (exact or modular).
template <typename T>
struct Terms {
  std::vector<T> forward;
  std::vector<T> backward;

  explicit Terms(int order) {
    forward.assign(static_cast<std::size_t>(order), T{0});
    forward.back() = T{1};
  }

  template <typename Add, typename Sub>
  const T& get(std::int64_t k, int order, Add add, Sub sub) {
    const auto n = static_cast<std::size_t>(order);
    if (k >= 0) {
      const auto idx = static_cast<std::size_t>(k);
      while (forward.size() <= idx) {
        // t_{m} = t_{m-n} + ... + t_{m-1}
        const std::size_t m = forward.size();
        T sum{0};
        for (std::size_t i = m - n; i < m; ++i) sum = add(sum, forward[i]);
        forward.push_back(std::move(sum));
      }
      return forward[idx];
    }
    const auto idx = static_cast<std::size_t>(-(k + 1));
    while (backward.size() <= idx) {
      // t_m = t_{m+n} - (t_{m+1} + ... + t_{m+n-1}), m = -(size+1)
      const std::int64_t m = -static_cast<std::int64_t>(backward.size()) - 1;
      auto at = [&](std::int64_t i) -> const T& {
        return i >= 0 ? forward[static_cast<std::size_t>(i)]
                      : backward[static_cast<std::size_t>(-(i + 1))];
      };
      // forward holds at least n terms, so m + n <= n - 1 is always cached.
      T value = at(m + order);
      for (int i = 1; i < order; ++i) value = sub(value, at(m + i));
      backward.push_back(std::move(value));
    }
    return backward[idx];
  }
};

}  // namespace

struct MultinacciSequence::Cache {
  std::mutex mutex;
  std::variant<Terms<BigInt>, Terms<Residue>> terms;

  Cache(int order, bool modular)
      : terms(modular ? decltype(terms){Terms<Residue>(order)}
                      : decltype(terms){Terms<BigInt>(order)}) {}
};

MultinacciSequence::MultinacciSequence(int order) : order_(order) {
  require_order(order);
  cache_ = std::make_unique<Cache>(order, false);
}

MultinacciSequence::MultinacciSequence(int order, PrimeModulus modulus)
    : order_(order), modulus_(modulus) {
  require_order(order);
  cache_ = std::make_unique<Cache>(order, true);
}

MultinacciSequence::MultinacciSequence(const MultinacciSequence& other)
    : order_(other.order_),
      modulus_(other.modulus_),
      cache_(std::make_unique<Cache>(other.order_, other.modulus_.has_value())) {
  std::lock_guard lock(other.cache_->mutex);
  cache_->terms = other.cache_->terms;
}

MultinacciSequence& MultinacciSequence::operator=(const MultinacciSequence& other) {
  if (this != &other) *this = MultinacciSequence(other);
  return *this;
}

MultinacciSequence::MultinacciSequence(MultinacciSequence&&) noexcept = default;
MultinacciSequence& MultinacciSequence::operator=(MultinacciSequence&&) noexcept = default;
MultinacciSequence::~MultinacciSequence() = default;

BigInt MultinacciSequence::term(std::int64_t k) const {
  if (modulus_) return BigInt(residue(k));
  std::lock_guard lock(cache_->mutex);
  auto& terms = std::get<Terms<BigInt>>(cache_->terms);
  return terms.get(
      k, order_, [](const BigInt& a, const BigInt& b) { return a + b; },
      [](const BigInt& a, const BigInt& b) { return a - b; });
}

Residue MultinacciSequence::residue(std::int64_t k) const {
  if (!modulus_) {
    throw InvalidParameter("residue() needs a sequence with a modulus");
  }
  const PrimeModulus f = *modulus_;
  std::lock_guard lock(cache_->mutex);
  auto& terms = std::get<Terms<Residue>>(cache_->terms);
  return terms.get(
      k, order_, [f](Residue a, Residue b) { return f.add(a, b); },
      [f](Residue a, Residue b) { return f.sub(a, b); });
}

ResidueMatrix fib_base(int order, PrimeModulus modulus) {
  require_order(order);
  const auto n = static_cast<std::size_t>(order);
  ResidueMatrix m(modulus, n);
  for (std::size_t j = 0; j < n; ++j) m.set(0, j, 1);
  for (std::size_t i = 1; i < n; ++i) m.set(i, i - 1, 1);
  return m;
}

FibPower fib_power_formula(int order, std::int64_t exponent, PrimeModulus modulus) {
  require_order(order);
  const MultinacciSequence seq(order, modulus);
  const auto n = static_cast<std::size_t>(order);
  const std::int64_t k = exponent;
  ResidueMatrix m(modulus, n);
  // 0-based (i, j): entry = t_{k+j-i-1} + ... + t_{k+n-2-i}, except column 0,
  // which collapses to the single term t_{k+n-1-i}.
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t si = static_cast<std::int64_t>(i);
    const std::int64_t top = k + order - 2 - si;
    m.set(i, 0, seq.residue(top + 1));
    for (std::size_t j = 1; j < n; ++j) {
      Residue sum = 0;
      for (std::int64_t idx = k + static_cast<std::int64_t>(j) - si - 1; idx <= top; ++idx)
        sum = modulus.add(sum, seq.residue(idx));
      m.set(i, j, sum);
    }
  }
  return FibPower(order, exponent, std::move(m));
}

FibPower fib_power_formula(int order, std::int64_t exponent, std::uint64_t p) {
  return fib_power_formula(order, exponent, PrimeModulus(p));
}

}  // namespace mpkc
