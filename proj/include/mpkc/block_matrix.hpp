#pragma once

#include <cstdint>

#include "mpkc/residue_matrix.hpp"

namespace mpkc {

/// The 2n x 2n upper block-triangular matrix [[M, C], [0, N]].
class BlockMatrix {
 public:
  /// Throws ShapeMismatch unless all three blocks share dim and modulus.
  BlockMatrix(ResidueMatrix top_left, ResidueMatrix top_right, ResidueMatrix bottom_right);

  const ResidueMatrix& top_left() const noexcept { return m_; }
  const ResidueMatrix& top_right() const noexcept { return c_; }
  const ResidueMatrix& bottom_right() const noexcept { return n_; }

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  ResidueMatrix m_;
  ResidueMatrix c_;
  ResidueMatrix n_;
};

/// [[M1, C1],[0, N1]]·[[M2, C2],[0, N2]] = [[M1M2, M1C2 + C1N2],[0, N1N2]].
/// Four matrix products.
BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);

/// a^l for l >= 1 by square-and-multiply. The top-right block of the result
/// is sum_{r=0}^{l-1} M^{l-1-r} C N^r.
BlockMatrix block_power(const BlockMatrix& a, std::uint64_t l);

/// Literal evaluation of sum_{r=0}^{l-1} M^{l-1-r}·C·N^r: builds the power
/// tables of M and N by successive products, then two products per term.
/// Reference for every faster path; 4l - 2 products.
ResidueMatrix c_sum_naive(const ResidueMatrix& m, const ResidueMatrix& c,
                          const ResidueMatrix& n, std::uint64_t l);

/// Same sum, read off block_power([[M, C],[0, N]], l). O(log l) products.
ResidueMatrix c_sum(const ResidueMatrix& m, const ResidueMatrix& c, const ResidueMatrix& n,
                    std::uint64_t l);

/// B_l = sum_{r=0}^{l-1} (F^{k1})^{l-1-r} F^{k2} (F^{k3})^r
///     = sum_{r=0}^{l-1} F^{r(k3-k1) + k1(l-1) + k2}.
struct PowerSumSpec {
  int order;
  PrimeModulus modulus;
  std::int64_t k1;
  std::int64_t k2;
  std::int64_t k3;
  std::uint64_t length;
};

/// B_l as F^{k1(l-1)+k2} · (I + F^d + ... + F^{d(l-1)}) with d = k3 - k1.
/// The geometric part is the top-right block of [[F^d, I],[0, I]]^l; for d = 0
/// it is l·I. F powers come from the entry formula, so the product count is
/// at most 8(floor(log2 l) + 1) + 1.
ResidueMatrix power_sum_fast(const PowerSumSpec& spec);

/// B_l through c_sum_naive on the three F powers.
ResidueMatrix power_sum_naive(const PowerSumSpec& spec);

/// One factor pair of a nested sum: sum_{r=0}^{length-1} left^{length-1-r} X right^r.
struct SumFactors {
  ResidueMatrix left;
  ResidueMatrix right;
  std::uint64_t length;
};

enum class Nesting {
  inner_first,  // apply `inner` to the seed, then `outer`
  outer_first,  // apply `outer` to the seed, then `inner`
};

/// A_{l,j} style double sum. Both nestings agree when outer.left commutes with
/// inner.left and outer.right with inner.right; that is checked up front and
/// CommutationViolation thrown otherwise.
ResidueMatrix double_sum(const SumFactors& outer, const SumFactors& inner,
                         const ResidueMatrix& seed, Nesting nesting = Nesting::inner_first);

}  // namespace mpkc
