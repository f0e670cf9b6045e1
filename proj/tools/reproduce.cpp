#include "reproduce.hpp"

#include <sstream>

#include "mpkc/block_matrix.hpp"
#include "mpkc/errors.hpp"
#include "mpkc/protocol.hpp"

namespace mpkc::cli {

namespace {

using Rows = std::vector<std::vector<std::uint64_t>>;

std::string show(const ResidueMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string show(const RowVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(PrimeModulus p) : p_(p) {}

  void matrix(const std::string& name, const Rows& expected, const ResidueMatrix& actual) {
    add(name, show(ResidueMatrix::from_rows(p_, expected)), show(actual));
  }
  void vector(const std::string& name, const RowVector& expected, const RowVector& actual) {
    add(name, show(expected), show(actual));
  }
  void add(const std::string& name, const std::string& expected, const std::string& actual) {
    points_.push_back({name, expected, actual, expected == actual});
  }
  void failed(const std::string& name, const std::string& expected, const std::string& why) {
    points_.push_back({name, expected, "error: " + why, false});
  }
  std::vector<Checkpoint> take() { return std::move(points_); }

 private:
  PrimeModulus p_;
  std::vector<Checkpoint> points_;
};

}  // namespace

std::vector<Checkpoint> reproduce_example(bool printed_k, bool printed_session_terms) {
  const PrimeModulus p(47);
  const Rows k5{{42, 25, 5}, {5, 37, 20}, {20, 32, 17}};
  const Rows k3{{24, 4, 19}, {19, 5, 32}, {32, 34, 20}};
  const Rows shared{{34, 19, 5}, {5, 29, 14}, {14, 38, 15}};
  const Rows d_k{{43, 30, 36}, {36, 7, 41}, {41, 42, 13}};
  const RowVector b{6, 39, 34};
  const RowVector c{36, 25, 15};
  const std::string plaintext = "HEY";

  Recorder rec(p);
  KeyPair keys = keygen({3, 47, 5, 9, 13, 2});
  if (printed_k) {
    keys.public_key.k = ResidueMatrix::from_rows(p, {{2, 3, 1}, {1, 1, 1}, {1, 0, 0}});
    keys.public_key.k_l = c_sum_naive(keys.secret_key.g.matrix(), keys.public_key.k,
                                      keys.secret_key.h.matrix(), keys.secret_key.length);
  }
  const PublicKey& pub = keys.public_key;
  rec.matrix("K_5", k5, pub.k_l);

  const SessionSecret session = make_session(pub, 3, 7, 15);
  const EncryptionKeys bob = [&] {
    if (printed_session_terms) {
      const auto& m = session.m.matrix();
      const auto& n = session.n.matrix();
      auto misprinted = [&](const ResidueMatrix& x) { return m * m * x + m * x * n + x * n; };
      return EncryptionKeys{misprinted(pub.k_l), misprinted(pub.k)};
    }
    try {
      return derive_encryption_key(pub, session);
    } catch (const DegenerateKey&) {
      // Keep the intermediates comparable even when E_K is singular.
      return EncryptionKeys{c_sum(session.m.matrix(), pub.k_l, session.n.matrix(), 3),
                            c_sum(session.m.matrix(), pub.k, session.n.matrix(), 3)};
    }
  }();
  const ResidueMatrix& bob_k3 = bob.k_j;
  const ResidueMatrix& bob_ek = bob.e_k;
  rec.matrix("K_3", k3, bob_k3);
  rec.matrix("K_5,3", shared, bob_ek);

  const ResidueMatrix alice_ek =
      c_sum(keys.secret_key.g.matrix(), bob_k3, keys.secret_key.h.matrix(), 5);
  rec.matrix("K_3,5", shared, alice_ek);
  rec.vector("B", b, b_vector(bob_ek));

  const EncodedBlocks plain = encode_text(plaintext, 3);
  const auto cipher = encrypt(bob_ek, plain.blocks);
  rec.add("C", show(c) + " \">ZP\"", show(cipher.front()) + " \"" + render_symbols(cipher) + "\"");

  try {
    const DecryptionKeys dec = derive_decryption_key(keys.secret_key, pub, bob_k3);
    rec.matrix("D_K", d_k, dec.d_k);
    rec.add("plaintext", plaintext,
            decode_text(decrypt(dec.d_k, dec.e_k, cipher), plain.pad_count));
  } catch (const Error& e) {
    rec.failed("D_K", show(ResidueMatrix::from_rows(p, d_k)), e.what());
    rec.failed("plaintext", plaintext, e.what());
  }
  return rec.take();
}

}  // namespace mpkc::cli
