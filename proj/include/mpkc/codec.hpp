#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpkc/residue_matrix.hpp"

namespace mpkc {

/// Residue blocks of a fixed length plus the number of pad residues appended
/// to the final block.
struct EncodedBlocks {
  std::vector<RowVector> blocks;
  std::size_t pad_count = 0;

  friend bool operator==(const EncodedBlocks&, const EncodedBlocks&) = default;
};

/// Bijection between 47 printable symbols and the residues of Z_47:
///   0..25 -> 'A'..'Z', 26..35 -> '0'..'9', 36 -> '>',
///   37..46 -> '<' '?' '@' '!' '#' '$' '%' '&' '*' '+'.
class SymbolCodec {
 public:
  static constexpr std::size_t kSize = 47;
  static constexpr Residue kPad = 46;

  static char symbol(Residue r);
  /// Case-insensitive for letters. Throws UnsupportedSymbol (position 0).
  static Residue residue(char c);

  static constexpr std::string_view alphabet() noexcept { return kAlphabet; }

 private:
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789><?@!#$%&*+";
  static_assert(kAlphabet.size() == kSize);
};

/// Uppercases, maps through SymbolCodec and cuts into blocks of `block_len`,
/// padding the last block with SymbolCodec::kPad. Throws UnsupportedSymbol
/// with the offending position.
EncodedBlocks encode_text(std::string_view text, std::size_t block_len);

/// Inverse of encode_text: drops `pad_count` trailing residues.
std::string decode_text(const std::vector<RowVector>& blocks, std::size_t pad_count);

/// Residues rendered as codec symbols, no padding removed.
std::string render_symbols(const std::vector<RowVector>& blocks);

/// Numeric mode: blocks residues of Z_p, padding with p - 1.
EncodedBlocks encode_residues(std::span<const Residue> values, std::size_t block_len,
                              const PrimeModulus& modulus);
RowVector decode_residues(const std::vector<RowVector>& blocks, std::size_t pad_count);

}  // namespace mpkc
