#include "mpkc/codec.hpp"

#include <cctype>
#include <string>

#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

template <typename Map>
EncodedBlocks chunk(std::size_t count, std::size_t block_len, Residue pad, Map value_at) {
  if (block_len == 0) throw InvalidParameter("block length must be positive");
  EncodedBlocks out;
  for (std::size_t start = 0; start < count; start += block_len) {
    RowVector block(block_len, pad);
    for (std::size_t i = 0; i < block_len && start + i < count; ++i) block[i] = value_at(start + i);
    out.blocks.push_back(std::move(block));
  }
  if (count % block_len != 0) out.pad_count = block_len - count % block_len;
  return out;
}

RowVector flatten(const std::vector<RowVector>& blocks, std::size_t pad_count) {
  RowVector flat;
  for (const auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
  if (pad_count > flat.size() || (blocks.empty() ? pad_count != 0 : pad_count >= blocks.back().size()))
    throw InvalidParameter("pad count " + std::to_string(pad_count) + " inconsistent with blocks");
  flat.resize(flat.size() - pad_count);
  return flat;
}

}  // namespace

char SymbolCodec::symbol(Residue r) {
  if (r >= kSize) throw InvalidParameter("residue " + std::to_string(r) + " has no symbol");
  return kAlphabet[r];
}

Residue SymbolCodec::residue(char c) {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  const auto pos = kAlphabet.find(upper);
  if (pos == std::string_view::npos) throw UnsupportedSymbol(c, 0);
  return pos;
}

EncodedBlocks encode_text(std::string_view text, std::size_t block_len) {
  RowVector values(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    try {
      values[i] = SymbolCodec::residue(text[i]);
    } catch (const UnsupportedSymbol&) {
      throw UnsupportedSymbol(text[i], i);
    }
  }
  return chunk(values.size(), block_len, SymbolCodec::kPad,
               [&](std::size_t i) { return values[i]; });
}

std::string decode_text(const std::vector<RowVector>& blocks, std::size_t pad_count) {
  std::string out;
  for (Residue r : flatten(blocks, pad_count)) out.push_back(SymbolCodec::symbol(r));
  return out;
}

std::string render_symbols(const std::vector<RowVector>& blocks) {
  std::string out;
  for (const auto& b : blocks)
    for (Residue r : b) out.push_back(SymbolCodec::symbol(r));
  return out;
}

EncodedBlocks encode_residues(std::span<const Residue> values, std::size_t block_len,
                              const PrimeModulus& modulus) {
  for (Residue v : values)
    if (v >= modulus.value())
      throw InvalidParameter("value " + std::to_string(v) + " is not a residue mod " +
                             std::to_string(modulus.value()));
  return chunk(values.size(), block_len, modulus.value() - 1,
               [&](std::size_t i) { return values[i]; });
}

RowVector decode_residues(const std::vector<RowVector>& blocks, std::size_t pad_count) {
  return flatten(blocks, pad_count);
}

}  // namespace mpkc
