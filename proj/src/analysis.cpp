#include "mpkc/analysis.hpp"

#include <chrono>
#include <deque>
#include <sstream>
#include <string>

#include "mpkc/block_matrix.hpp"
#include "mpkc/errors.hpp"
#include "mpkc/multinacci.hpp"

namespace mpkc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

[[noreturn]] void over_cap(std::uint64_t cap) {
  throw ResourceLimit("search exceeded " + std::to_string(cap) + " steps");
}

void require_target(int order, const ResidueMatrix& target) {
  if (order < 2) throw InvalidParameter("order must be >= 2");
  if (target.dim() != static_cast<std::size_t>(order))
    throw ShapeMismatch("target is " + std::to_string(target.dim()) + "x" +
                        std::to_string(target.dim()) + ", expected order " + std::to_string(order));
}

}  // namespace

PeriodReport matrix_order(int order, std::uint64_t p, std::uint64_t cap) {
  const PrimeModulus modulus(p);
  const ResidueMatrix base = fib_base(order, modulus);
  ResidueMatrix power = base;
  std::uint64_t k = 1;
  while (!power.is_identity()) {
    if (++k > cap) over_cap(cap);
    power = power * base;
  }
  return {order, p, k};
}

AttackResult recover_exponent(int order, const ResidueMatrix& target, std::uint64_t cap) {
  require_target(order, target);
  const auto start = Clock::now();
  const PrimeModulus& f = target.modulus();
  const auto n = static_cast<std::size_t>(order);
  const std::int64_t sn = order;

  // window[i] = t_{k-n+1+i}, i = 0 .. 2n-2, for the current exponent k.
  std::deque<Residue> window;
  {
    const MultinacciSequence seq(order, f);
    for (std::int64_t i = 2 - sn; i <= sn; ++i) window.push_back(seq.residue(i));
  }
  auto term = [&](std::int64_t offset) {  // t_{k+offset}
    return window[static_cast<std::size_t>(offset + sn - 1)];
  };
  auto at_identity = [&] {
    for (std::int64_t i = 0; i < sn - 1; ++i)
      if (term(i) != 0) return false;
    return term(sn - 1) == 1 % f.value();
  };
  auto matches = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t si = static_cast<std::int64_t>(i);
      if (term(sn - 1 - si) != target(i, 0)) return false;
      for (std::size_t j = 1; j < n; ++j) {
        Residue sum = 0;
        for (std::int64_t o = static_cast<std::int64_t>(j) - si - 1; o <= sn - 2 - si; ++o)
          sum = f.add(sum, term(o));
        if (sum != target(i, j)) return false;
      }
    }
    return true;
  };

  AttackResult result;
  const Residue probe = target(0, n - 1);
  for (std::uint64_t k = 1;; ++k) {
    if (k > cap) over_cap(cap);
    ++result.exponents_tried;
    if (!result.exponent && term(sn - 2) == probe) {
      ++result.full_comparisons;
      if (matches()) result.exponent = k;
    }
    if (at_identity()) {
      result.period = k;
      break;
    }
    Residue next = 0;
    for (std::size_t i = window.size() - n; i < window.size(); ++i) next = f.add(next, window[i]);
    window.push_back(next);
    window.pop_front();
  }
  result.seconds = seconds_since(start);
  return result;
}

AttackResult recover_exponent_exhaustive(int order, const ResidueMatrix& target,
                                         std::uint64_t cap) {
  require_target(order, target);
  const auto start = Clock::now();
  const MultiplicationTally tally;
  const ResidueMatrix base = fib_base(order, target.modulus());
  ResidueMatrix power = base;
  AttackResult result;
  for (std::uint64_t k = 1;; ++k) {
    if (k > cap) over_cap(cap);
    ++result.exponents_tried;
    if (!result.exponent) {
      ++result.full_comparisons;
      if (power == target) result.exponent = k;
    }
    if (power.is_identity()) {
      result.period = k;
      break;
    }
    power = power * base;
  }
  result.matrix_multiplications = tally.count();
  result.seconds = seconds_since(start);
  return result;
}

std::vector<CostRow> cost_comparison(int order, std::uint64_t p,
                                     std::span<const std::uint64_t> lengths, std::int64_t k1,
                                     std::int64_t k2, std::int64_t k3) {
  const PrimeModulus modulus(p);
  const auto f = [&](std::int64_t k) { return fib_power_formula(order, k, modulus).matrix(); };
  const ResidueMatrix m = f(k1), c = f(k2), n = f(k3);
  std::vector<CostRow> rows;
  for (std::uint64_t l : lengths) {
    CostRow row{l, 0, 0};
    {
      const MultiplicationTally tally;
      c_sum_naive(m, c, n, l);
      row.naive_mults = tally.count();
    }
    {
      const MultiplicationTally tally;
      power_sum_fast({order, modulus, k1, k2, k3, l});
      row.fast_mults = tally.count();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string cost_csv(std::span<const CostRow> rows) {
  std::ostringstream os;
  os << "l,naive_mults,fast_mults\n";
  for (const auto& r : rows) os << r.length << ',' << r.naive_mults << ',' << r.fast_mults << '\n';
  return os.str();
}

}  // namespace mpkc
