#pragma once

#include <string>
#include <string_view>

#include "mpkc/protocol.hpp"

namespace mpkc {

// Line-oriented "MPKC v1" documents. Every document starts with the header
// line and a role; fields are `key=value`, matrices are `matrix <name>`
// followed by n rows of n decimal residues, message blocks are
// `block c1 ... cn`. Blank lines are ignored. Unknown or repeated fields are
// rejected, as are entries >= p and non-prime p.
//
//   MPKC v1                 MPKC v1                  MPKC v1
//   role=public             role=secret              role=message
//   p=47                    p=47                     p=47
//   n=3                     n=3                      n=3
//   matrix K                l=5                      pad=0
//   2 2 1                   exp_g=9                  matrix K_j
//   ...                     exp_h=13                 ...
//   matrix K_l              matrix G                 block 36 25 15
//   ...                     ... (and matrix H)
//
// Serialization is canonical: equal values give identical bytes.

std::string serialize_key(const PublicKey& key);
std::string serialize_key(const SecretKey& key);
std::string serialize_message(const CipherMessage& message);

PublicKey parse_public_key(std::string_view document);
/// Also checks that G and H equal F^exp_g and F^exp_h.
SecretKey parse_secret_key(std::string_view document);
CipherMessage parse_message(std::string_view document);

}  // namespace mpkc
