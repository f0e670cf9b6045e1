#include "mpkc/protocol.hpp"

#include <cassert>
#include <string>

#include "mpkc/block_matrix.hpp"
#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

void require_same_field(const PublicKey& pub, const FibPower& f, const char* what) {
  if (f.order() != pub.order || f.modulus() != pub.modulus)
    throw ShapeMismatch(std::string(what) + " does not match the public key's order/modulus");
}

void require_block_shape(const RowVector& block, const PrimeModulus& modulus, std::size_t n) {
  if (block.size() != n)
    throw ShapeMismatch("block of length " + std::to_string(block.size()) + ", expected " +
                        std::to_string(n));
  for (Residue r : block)
    if (r >= modulus.value())
      throw InvalidParameter("block entry " + std::to_string(r) + " is not a residue mod " +
                             std::to_string(modulus.value()));
}

}  // namespace

KeyPair keygen(const KeygenParams& params) {
  if (params.order < 2) throw InvalidParameter("order n must be >= 2");
  if (params.length < 1) throw InvalidParameter("length l must be >= 1");
  if (params.exp_g < 1 || params.exp_h < 1 || params.exp_k < 1)
    throw InvalidParameter("exponents of G, H and K must be >= 1");
  const PrimeModulus p(params.modulus);
  if (params.modulus < kMinCipherModulus)
    throw InvalidParameter("modulus must be >= " + std::to_string(kMinCipherModulus));

  FibPower g = fib_power_formula(params.order, params.exp_g, p);
  FibPower h = fib_power_formula(params.order, params.exp_h, p);
  FibPower k = fib_power_formula(params.order, params.exp_k, p);
  // F powers have det = +-1, so K is always invertible.
  assert(k.matrix().determinant() != 0);

  ResidueMatrix k_l = power_sum_fast(
      {params.order, p, params.exp_g, params.exp_k, params.exp_h, params.length});
  assert(k_l == c_sum_naive(g.matrix(), k.matrix(), h.matrix(), params.length));
  // Every session key is K_l times a sum of F powers, so a singular K_l can
  // never yield an invertible E_K.
  if (k_l.determinant() == 0)
    throw DegenerateKey("public K_l is singular mod " + std::to_string(params.modulus) +
                        "; choose different l or exponents");

  return {PublicKey{p, params.order, k.matrix(), std::move(k_l)},
          SecretKey{params.length, std::move(g), std::move(h)}};
}

SessionSecret make_session(const PublicKey& pub, std::uint64_t length, std::int64_t exp_m,
                           std::int64_t exp_n) {
  if (length < 1) throw InvalidParameter("length j must be >= 1");
  if (exp_m < 0 || exp_n < 0) throw InvalidParameter("exponents of M and N must be >= 0");
  return {length, fib_power_formula(pub.order, exp_m, pub.modulus),
          fib_power_formula(pub.order, exp_n, pub.modulus)};
}

EncryptionKeys derive_encryption_key(const PublicKey& pub, const SessionSecret& session) {
  require_same_field(pub, session.m, "M");
  require_same_field(pub, session.n, "N");
  const auto& m = session.m.matrix();
  const auto& n = session.n.matrix();
  ResidueMatrix k_j = c_sum(m, pub.k, n, session.length);
  ResidueMatrix e_k = c_sum(m, pub.k_l, n, session.length);
  if (const Residue det = e_k.determinant(); det == 0)
    throw DegenerateKey("encryption key K_{l,j} is singular mod " +
                        std::to_string(pub.modulus.value()) +
                        "; choose a different session secret");
  return {std::move(e_k), std::move(k_j)};
}

DecryptionKeys derive_decryption_key(const SecretKey& secret, const PublicKey& pub,
                                     const ResidueMatrix& k_j) {
  require_same_field(pub, secret.g, "G");
  require_same_field(pub, secret.h, "H");
  if (k_j.dim() != static_cast<std::size_t>(pub.order) || k_j.modulus() != pub.modulus)
    throw ShapeMismatch("K_j does not match the public key's order/modulus");
  ResidueMatrix e_k = c_sum(secret.g.matrix(), k_j, secret.h.matrix(), secret.length);
  ResidueMatrix d_k = mat_inv(e_k);
  return {std::move(e_k), std::move(d_k)};
}

RowVector b_vector(const ResidueMatrix& e) {
  const auto& f = e.modulus();
  RowVector b(e.dim(), 0);
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j < e.dim(); ++j) b[j] = f.add(b[j], e(i, j));
  return b;
}

std::vector<RowVector> encrypt(const ResidueMatrix& e_k, const std::vector<RowVector>& blocks) {
  const RowVector b = b_vector(e_k);
  const auto& f = e_k.modulus();
  std::vector<RowVector> out;
  out.reserve(blocks.size());
  for (const auto& p : blocks) {
    require_block_shape(p, f, e_k.dim());
    RowVector c = row_times(p, e_k);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(c[i], b[i]);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<RowVector> decrypt(const ResidueMatrix& d_k, const ResidueMatrix& e_k,
                               const std::vector<RowVector>& blocks) {
  if (d_k.dim() != e_k.dim() || d_k.modulus() != e_k.modulus())
    throw ShapeMismatch("decryption and encryption keys differ in shape");
  const RowVector b = b_vector(e_k);
  const auto& f = e_k.modulus();
  std::vector<RowVector> out;
  out.reserve(blocks.size());
  for (const auto& c : blocks) {
    require_block_shape(c, f, d_k.dim());
    RowVector shifted(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) shifted[i] = f.sub(c[i], b[i]);
    out.push_back(row_times(shifted, d_k));
  }
  return out;
}

CipherMessage encrypt_blocks(const PublicKey& pub, const SessionSecret& session,
                             const EncodedBlocks& plain) {
  const auto n = static_cast<std::size_t>(pub.order);
  if (plain.pad_count >= n) throw InvalidParameter("pad count must be < n");
  auto keys = derive_encryption_key(pub, session);
  return {pub.modulus, pub.order, std::move(keys.k_j), encrypt(keys.e_k, plain.blocks),
          plain.pad_count};
}

EncodedBlocks decrypt_blocks(const SecretKey& secret, const PublicKey& pub,
                             const CipherMessage& message) {
  if (message.modulus != pub.modulus || message.order != pub.order)
    throw ShapeMismatch("message does not match the key's order/modulus");
  const auto keys = derive_decryption_key(secret, pub, message.k_j);
  return {decrypt(keys.d_k, keys.e_k, message.blocks), message.pad_count};
}

CipherMessage encrypt_text(const PublicKey& pub, const SessionSecret& session,
                           std::string_view text) {
  if (pub.modulus.value() != kTextModulus)
    throw InvalidParameter("text mode requires p = " + std::to_string(kTextModulus));
  return encrypt_blocks(pub, session, encode_text(text, static_cast<std::size_t>(pub.order)));
}

std::string decrypt_text(const SecretKey& secret, const PublicKey& pub,
                         const CipherMessage& message) {
  if (pub.modulus.value() != kTextModulus)
    throw InvalidParameter("text mode requires p = " + std::to_string(kTextModulus));
  const auto plain = decrypt_blocks(secret, pub, message);
  return decode_text(plain.blocks, plain.pad_count);
}

}  // namespace mpkc
