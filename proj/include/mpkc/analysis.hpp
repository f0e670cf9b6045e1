#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpkc/residue_matrix.hpp"

namespace mpkc {

inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;

/// Smallest m >= 1 with F_n^m = I (mod p); a generalized Pisano period.
struct PeriodReport {
  int order;
  std::uint64_t modulus;
  std::uint64_t period;
};

/// Walks F_n, F_n^2, ... until the identity recurs. Throws ResourceLimit if
/// the period exceeds `cap`.
PeriodReport matrix_order(int order, std::uint64_t p, std::uint64_t cap = kDefaultSearchCap);

struct AttackResult {
  /// Smallest k in [1, period] with F_n^k = target. The identity yields
  /// k = period, which is also 0 mod period.
  std::optional<std::uint64_t> exponent;
  std::uint64_t period = 0;
  std::uint64_t exponents_tried = 0;
  /// Candidates that passed the single-entry filter and were compared in full.
  std::uint64_t full_comparisons = 0;
  std::uint64_t matrix_multiplications = 0;
  double seconds = 0.0;
};

/// Discrete log of `target` to base F_n. Walks the sequence mod p with an
/// n-term window; a candidate k is materialized only when t_{k+n-2} equals
/// target(1, n), the top-right entry of F_n^k. Stops when the window returns
/// to its initial state, i.e. after one period.
AttackResult recover_exponent(int order, const ResidueMatrix& target,
                              std::uint64_t cap = kDefaultSearchCap);

/// Unpruned reference: multiplies by F_n each step and compares every power.
AttackResult recover_exponent_exhaustive(int order, const ResidueMatrix& target,
                                         std::uint64_t cap = kDefaultSearchCap);

struct CostRow {
  std::uint64_t length;
  std::uint64_t naive_mults;
  std::uint64_t fast_mults;
};

/// Multiplication counts of power_sum_naive vs power_sum_fast for each length,
/// with M = F^k1, C = F^k2, N = F^k3.
std::vector<CostRow> cost_comparison(int order, std::uint64_t p,
                                     std::span<const std::uint64_t> lengths,
                                     std::int64_t k1 = 9, std::int64_t k2 = 2,
                                     std::int64_t k3 = 13);

/// Header `l,naive_mults,fast_mults` and one row per entry.
std::string cost_csv(std::span<const CostRow> rows);

}  // namespace mpkc
