#pragma once

#include <string>
#include <vector>

namespace mpkc::cli {

struct Checkpoint {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Replays the published p = 47 tribonacci example (l = 5, G = F^9, H = F^13,
/// K = F^2, j = 3, M = F^7, N = F^15, plaintext "HEY") and compares every
/// intermediate against the printed values. With `printed_k`, K is taken as
/// printed, [[2,3,1],[1,1,1],[1,0,0]], instead of F^2 = [[2,2,1],[1,1,1],[1,0,0]].
///
/// The printed K_3 and K_{5,3} are M^2·X + M·X·N + X·N, i.e. the s = 2 term
/// uses N instead of N^2. `printed_session_terms` evaluates Bob's sums that
/// way, which reproduces every printed value.
std::vector<Checkpoint> reproduce_example(bool printed_k, bool printed_session_terms = false);

}  // namespace mpkc::cli
