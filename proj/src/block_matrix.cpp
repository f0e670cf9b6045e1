#include "mpkc/block_matrix.hpp"

#include <string>
#include <utility>

#include "mpkc/errors.hpp"
#include "mpkc/multinacci.hpp"

namespace mpkc {

namespace {

void require_compatible(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.dim() != b.dim() || a.modulus() != b.modulus())
    throw ShapeMismatch("block operands differ in dimension or modulus");
}

void require_length(std::uint64_t l) {
  if (l == 0) throw InvalidParameter("sum length must be >= 1");
}

bool commute(const ResidueMatrix& a, const ResidueMatrix& b) { return a * b == b * a; }

}  // namespace

BlockMatrix::BlockMatrix(ResidueMatrix top_left, ResidueMatrix top_right,
                         ResidueMatrix bottom_right)
    : m_(std::move(top_left)), c_(std::move(top_right)), n_(std::move(bottom_right)) {
  require_compatible(m_, c_);
  require_compatible(m_, n_);
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  require_compatible(a.top_left(), b.top_left());
  return BlockMatrix(a.top_left() * b.top_left(),
                     a.top_left() * b.top_right() + a.top_right() * b.bottom_right(),
                     a.bottom_right() * b.bottom_right());
}

BlockMatrix block_power(const BlockMatrix& a, std::uint64_t l) {
  require_length(l);
  // Left-to-right binary method: one squaring per bit after the leading one,
  // one extra product per set bit.
  int top = 63;
  while (((l >> top) & 1) == 0) --top;
  BlockMatrix result = a;
  for (int bit = top - 1; bit >= 0; --bit) {
    result = result * result;
    if ((l >> bit) & 1) result = result * a;
  }
  return result;
}

ResidueMatrix c_sum_naive(const ResidueMatrix& m, const ResidueMatrix& c, const ResidueMatrix& n,
                          std::uint64_t l) {
  require_length(l);
  require_compatible(m, c);
  require_compatible(m, n);
  const ResidueMatrix id = ResidueMatrix::identity(m.modulus(), m.dim());
  std::vector<ResidueMatrix> m_pow{id};
  std::vector<ResidueMatrix> n_pow{id};
  m_pow.reserve(l);
  n_pow.reserve(l);
  for (std::uint64_t r = 1; r < l; ++r) {
    m_pow.push_back(m_pow.back() * m);
    n_pow.push_back(n_pow.back() * n);
  }
  ResidueMatrix sum(m.modulus(), m.dim());
  for (std::uint64_t r = 0; r < l; ++r) sum += m_pow[l - 1 - r] * c * n_pow[r];
  return sum;
}

ResidueMatrix c_sum(const ResidueMatrix& m, const ResidueMatrix& c, const ResidueMatrix& n,
                    std::uint64_t l) {
  return block_power(BlockMatrix(m, c, n), l).top_right();
}

ResidueMatrix power_sum_fast(const PowerSumSpec& spec) {
  require_length(spec.length);
  const auto l = static_cast<std::int64_t>(spec.length);
  const std::int64_t d = spec.k3 - spec.k1;
  const std::int64_t lead = spec.k1 * (l - 1) + spec.k2;
  const ResidueMatrix front = fib_power_formula(spec.order, lead, spec.modulus).matrix();
  if (d == 0) {
    // F^{dr} = I for every r: the geometric part is l·I.
    return front.scaled(spec.modulus.reduce(l));
  }
  const ResidueMatrix step = fib_power_formula(spec.order, d, spec.modulus).matrix();
  const ResidueMatrix id = ResidueMatrix::identity(spec.modulus, step.dim());
  const ResidueMatrix geometric = block_power(BlockMatrix(step, id, id), spec.length).top_right();
  return front * geometric;
}

ResidueMatrix power_sum_naive(const PowerSumSpec& spec) {
  const auto f = [&](std::int64_t k) {
    return fib_power_formula(spec.order, k, spec.modulus).matrix();
  };
  return c_sum_naive(f(spec.k1), f(spec.k2), f(spec.k3), spec.length);
}

ResidueMatrix double_sum(const SumFactors& outer, const SumFactors& inner,
                         const ResidueMatrix& seed, Nesting nesting) {
  require_length(outer.length);
  require_length(inner.length);
  require_compatible(outer.left, inner.left);
  require_compatible(outer.left, outer.right);
  require_compatible(outer.left, inner.right);
  require_compatible(outer.left, seed);
  if (!commute(outer.left, inner.left))
    throw CommutationViolation("left factors of the two sums do not commute");
  if (!commute(outer.right, inner.right))
    throw CommutationViolation("right factors of the two sums do not commute");

  const SumFactors& first = nesting == Nesting::inner_first ? inner : outer;
  const SumFactors& second = nesting == Nesting::inner_first ? outer : inner;
  const ResidueMatrix once = c_sum(first.left, seed, first.right, first.length);
  return c_sum(second.left, once, second.right, second.length);
}

}  // namespace mpkc
