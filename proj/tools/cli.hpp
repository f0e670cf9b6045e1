#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpkc::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kIo = 3,
  kDegenerateKey = 4,
  kResourceLimit = 5,
};

/// Runs one command line (args excludes the program name). Everything the
/// tool prints goes to `out`/`err`, so tests can drive it in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

}  // namespace mpkc::cli
