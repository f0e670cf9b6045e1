#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mpkc/codec.hpp"
#include "mpkc/multinacci.hpp"
#include "mpkc/residue_matrix.hpp"

namespace mpkc {

/// Smallest modulus accepted by the cipher.
inline constexpr std::uint64_t kMinCipherModulus = 26;
/// Text mode needs one residue per codec symbol.
inline constexpr std::uint64_t kTextModulus = SymbolCodec::kSize;

/// Alice's public part (p, K, K_l).
struct PublicKey {
  PrimeModulus modulus;
  int order;
  ResidueMatrix k;
  ResidueMatrix k_l;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// Alice's secret part (l, G, H).
struct SecretKey {
  std::uint64_t length;
  FibPower g;
  FibPower h;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;
};

/// Bob's per-message secret (j, M, N).
struct SessionSecret {
  std::uint64_t length;
  FibPower m;
  FibPower n;
};

struct KeygenParams {
  int order = 3;
  std::uint64_t modulus = 47;
  std::uint64_t length = 1;
  std::int64_t exp_g = 1;
  std::int64_t exp_h = 1;
  std::int64_t exp_k = 1;
};

/// G = F^exp_g, H = F^exp_h, K = F^exp_k and
///   K_l = sum_{r=0}^{l-1} G^{l-1-r} K H^r   (mod p).
/// Throws InvalidParameter for n < 2, l < 1, an exponent < 1, p not prime or
/// p < 26, and DegenerateKey if K_l is singular (no session could use it).
KeyPair keygen(const KeygenParams& params);

/// Builds (j, F^exp_m, F^exp_n) against `pub`. Exponents may be any
/// non-negative value; j >= 1.
SessionSecret make_session(const PublicKey& pub, std::uint64_t length, std::int64_t exp_m,
                           std::int64_t exp_n);

struct EncryptionKeys {
  ResidueMatrix e_k;  // K_{l,j}
  ResidueMatrix k_j;  // sent to Alice
};

/// K_j = sum_{s=0}^{j-1} M^{j-1-s} K N^s and E_K = the same sum over K_l.
/// Throws DegenerateKey if E_K is singular.
EncryptionKeys derive_encryption_key(const PublicKey& pub, const SessionSecret& session);

struct DecryptionKeys {
  ResidueMatrix e_k;  // K_{j,l}
  ResidueMatrix d_k;  // E_K^{-1}
};

/// E_K = sum_{r=0}^{l-1} G^{l-1-r} K_j H^r and D_K = E_K^{-1}.
/// Throws ShapeMismatch if K_j does not match the key, SingularMatrix if E_K
/// is not invertible.
DecryptionKeys derive_decryption_key(const SecretKey& secret, const PublicKey& pub,
                                     const ResidueMatrix& k_j);

/// Column sums of `e`, mod p.
RowVector b_vector(const ResidueMatrix& e);

/// C = P·E_K + B per block, B = b_vector(E_K).
std::vector<RowVector> encrypt(const ResidueMatrix& e_k, const std::vector<RowVector>& blocks);

/// P = (C - B)·D_K per block, B = b_vector(E_K).
std::vector<RowVector> decrypt(const ResidueMatrix& d_k, const ResidueMatrix& e_k,
                               const std::vector<RowVector>& blocks);

/// What Bob transmits: K_j plus the ciphertext blocks.
struct CipherMessage {
  PrimeModulus modulus;
  int order;
  ResidueMatrix k_j;
  std::vector<RowVector> blocks;
  std::size_t pad_count = 0;

  friend bool operator==(const CipherMessage&, const CipherMessage&) = default;
};

CipherMessage encrypt_blocks(const PublicKey& pub, const SessionSecret& session,
                             const EncodedBlocks& plain);
EncodedBlocks decrypt_blocks(const SecretKey& secret, const PublicKey& pub,
                             const CipherMessage& message);

/// Text mode; requires p = 47.
CipherMessage encrypt_text(const PublicKey& pub, const SessionSecret& session,
                           std::string_view text);
std::string decrypt_text(const SecretKey& secret, const PublicKey& pub,
                         const CipherMessage& message);

}  // namespace mpkc
