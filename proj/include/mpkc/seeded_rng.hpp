#pragma once

#include <cstdint>
#include <random>

namespace mpkc {

/// mt19937_64 with its own bounded draw, so a seed yields the same values on
/// every standard library (std::uniform_int_distribution is not portable).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi], lo <= hi, by rejection sampling.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpkc
