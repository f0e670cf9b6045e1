#include <gtest/gtest.h>

#include <random>

#include "mpkc/block_matrix.hpp"
#include "mpkc/errors.hpp"
#include "mpkc/protocol.hpp"
#include "oracle.hpp"
#include "random_keys.hpp"

using namespace mpkc;

namespace {

const PrimeModulus p47(47);

ResidueMatrix rows47(std::initializer_list<std::initializer_list<std::uint64_t>> r) {
  return ResidueMatrix::from_rows(p47, r);
}

KeyPair example_keys() { return keygen({3, 47, 5, 9, 13, 2}); }

// Printed encryption/decryption keys; self-consistent with each other and with
// the printed B and C.
const ResidueMatrix printed_e = rows47({{34, 19, 5}, {5, 29, 14}, {14, 38, 15}});
const ResidueMatrix printed_d = rows47({{43, 30, 36}, {36, 7, 41}, {41, 42, 13}});

}  // namespace

TEST(Keygen, WorkedExamplePublicKey) {
  const auto keys = example_keys();
  EXPECT_EQ(keys.public_key.k_l, rows47({{42, 25, 5}, {5, 37, 20}, {20, 32, 17}}));
  EXPECT_EQ(keys.public_key.k, rows47({{2, 2, 1}, {1, 1, 1}, {1, 0, 0}}));
  EXPECT_EQ(keys.secret_key.length, 5u);
  EXPECT_EQ(keys.secret_key.g.matrix(), rows47({{8, 31, 34}, {34, 21, 44}, {44, 37, 24}}));
  EXPECT_EQ(keys.secret_key.g.exponent(), 9);
  EXPECT_EQ(keys.secret_key.h.exponent(), 13);
}

TEST(Keygen, LengthOneGivesK) {
  const auto keys = keygen({3, 47, 1, 9, 13, 2});
  EXPECT_EQ(keys.public_key.k_l, keys.public_key.k);
}

TEST(Keygen, SmallFibonacciCaseMatchesTripleSum) {
  const auto keys = keygen({2, 29, 3, 2, 4, 3});
  const auto f = oracle::fib_base(2);
  const auto expected = oracle::triple_sum(oracle::power(f, 2, 29), oracle::power(f, 3, 29),
                                           oracle::power(f, 4, 29), 3, 29);
  EXPECT_EQ(expected, (oracle::Rows{{17, 20}, {20, 26}}));
  EXPECT_EQ(keys.public_key.k_l.rows(), expected);
}

TEST(Keygen, RejectsInvalidParameters) {
  EXPECT_THROW(keygen({3, 46, 5, 9, 13, 2}), InvalidParameter);
  EXPECT_THROW(keygen({3, 23, 5, 9, 13, 2}), InvalidParameter);
  EXPECT_THROW(keygen({1, 47, 5, 9, 13, 2}), InvalidParameter);
  EXPECT_THROW(keygen({3, 47, 0, 9, 13, 2}), InvalidParameter);
  EXPECT_THROW(keygen({3, 47, 5, 0, 0, 0}), InvalidParameter);
  EXPECT_THROW(keygen({3, 47, 5, 9, 13, 0}), InvalidParameter);
}

TEST(DeriveEncryptionKey, WorkedExampleSession) {
  const auto keys = example_keys();
  const auto bob = derive_encryption_key(keys.public_key, make_session(keys.public_key, 3, 7, 15));
  EXPECT_EQ(bob.k_j, rows47({{34, 39, 41}, {41, 40, 45}, {45, 43, 42}}));
  EXPECT_EQ(bob.e_k, rows47({{31, 18, 13}, {13, 18, 5}, {5, 8, 13}}));
}

TEST(DeriveEncryptionKey, IdentitySession) {
  const auto keys = example_keys();
  const auto bob = derive_encryption_key(keys.public_key, make_session(keys.public_key, 1, 0, 0));
  EXPECT_EQ(bob.e_k, keys.public_key.k_l);
  EXPECT_EQ(bob.k_j, keys.public_key.k);
}

TEST(DeriveEncryptionKey, SingularKeyIsRetriable) {
  // n = 2, p = 29, l = 2, G = H = K = F: K_l = 2F^2, and j = 2 with M = I,
  // N = F^7 gives a singular E_K.
  const auto keys = keygen({2, 29, 2, 1, 1, 1});
  EXPECT_THROW(derive_encryption_key(keys.public_key, make_session(keys.public_key, 2, 0, 7)),
               DegenerateKey);
  EXPECT_NO_THROW(derive_encryption_key(keys.public_key, make_session(keys.public_key, 2, 1, 7)));
}

TEST(DeriveEncryptionKey, MatchesDoubleSumBobThenAlice) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const std::uint64_t p = (trial % 2) ? 101 : 47;
    const auto keys = random_keys(gen, n, p, 8, 40);
    const auto session = make_session(keys.public_key, 1 + gen() % 8,
                                      static_cast<std::int64_t>(gen() % 40),
                                      static_cast<std::int64_t>(gen() % 40));
    const auto expected =
        double_sum({session.m.matrix(), session.n.matrix(), session.length},
                   {keys.secret_key.g.matrix(), keys.secret_key.h.matrix(), keys.secret_key.length},
                   keys.public_key.k, Nesting::inner_first);
    try {
      EXPECT_EQ(derive_encryption_key(keys.public_key, session).e_k, expected);
    } catch (const DegenerateKey&) {
      EXPECT_EQ(expected.determinant(), 0u);
    }
  }
}

TEST(DeriveDecryptionKey, WorkedExample) {
  const auto keys = example_keys();
  const auto bob = derive_encryption_key(keys.public_key, make_session(keys.public_key, 3, 7, 15));
  const auto alice = derive_decryption_key(keys.secret_key, keys.public_key, bob.k_j);
  EXPECT_EQ(alice.e_k, bob.e_k);
  EXPECT_EQ(alice.d_k, rows47({{9, 40, 19}, {19, 37, 21}, {21, 45, 16}}));
}

TEST(DeriveDecryptionKey, AcceptsPrintedSessionMatrix) {
  // Alice's half of the printed example is self-consistent: from the printed
  // K_3 she gets the printed K_{3,5} and D_K.
  const auto keys = example_keys();
  const auto alice = derive_decryption_key(keys.secret_key, keys.public_key,
                                           rows47({{24, 4, 19}, {19, 5, 32}, {32, 34, 20}}));
  EXPECT_EQ(alice.e_k, printed_e);
  EXPECT_EQ(alice.d_k, printed_d);
}

TEST(DeriveDecryptionKey, IdentitySecret) {
  const auto keys = keygen({3, 47, 1, 46, 46, 2});  // F_3^46 = I mod 47
  ASSERT_TRUE(keys.secret_key.g.matrix().is_identity());
  const auto k_j = rows47({{34, 39, 41}, {41, 40, 45}, {45, 43, 42}});
  EXPECT_EQ(derive_decryption_key(keys.secret_key, keys.public_key, k_j).e_k, k_j);
}

TEST(DeriveDecryptionKey, ShapeChecked) {
  const auto keys = example_keys();
  EXPECT_THROW(derive_decryption_key(keys.secret_key, keys.public_key, ResidueMatrix::identity(p47, 2)),
               ShapeMismatch);
}

TEST(DeriveDecryptionKey, SingularPropagates) {
  const auto keys = example_keys();
  EXPECT_THROW(derive_decryption_key(keys.secret_key, keys.public_key, ResidueMatrix(p47, 3)),
               SingularMatrix);
}

TEST(SharedKey, BothSidesAgreeOnRandomParameters) {
  std::mt19937_64 gen(22);
  const std::uint64_t primes[] = {29, 31, 47, 101, 1000003};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const auto p = primes[gen() % 5];
    auto e = [&] { return 1 + static_cast<std::int64_t>(gen() % 100); };
    const auto keys = random_keys(gen, n, p, 20, 100);
    const auto session = make_session(keys.public_key, 1 + gen() % 20, e(), e());
    const ResidueMatrix bob_e = c_sum(session.m.matrix(), keys.public_key.k_l, session.n.matrix(),
                                      session.length);
    const ResidueMatrix k_j = c_sum(session.m.matrix(), keys.public_key.k, session.n.matrix(),
                                    session.length);
    const ResidueMatrix alice_e =
        c_sum(keys.secret_key.g.matrix(), k_j, keys.secret_key.h.matrix(), keys.secret_key.length);
    EXPECT_EQ(alice_e, bob_e);
  }
}

TEST(BVector, ColumnSums) {
  EXPECT_EQ(b_vector(printed_e), (RowVector{6, 39, 34}));
  EXPECT_EQ(b_vector(ResidueMatrix(p47, 3)), (RowVector{0, 0, 0}));
  EXPECT_EQ(b_vector(ResidueMatrix::identity(p47, 3)), (RowVector{1, 1, 1}));
}

TEST(Encrypt, PrintedKeyGivesPrintedCiphertext) {
  const auto c = encrypt(printed_e, {{7, 4, 24}});
  EXPECT_EQ(c, (std::vector<RowVector>{{36, 25, 15}}));
  EXPECT_EQ(render_symbols(c), ">ZP");
}

TEST(Encrypt, ZeroBlockYieldsB) {
  EXPECT_EQ(encrypt(printed_e, {{0, 0, 0}}).front(), b_vector(printed_e));
}

TEST(Encrypt, BlockShapeChecked) {
  EXPECT_THROW(encrypt(printed_e, {{1, 2}}), ShapeMismatch);
  EXPECT_THROW(encrypt(printed_e, {{1, 2, 47}}), InvalidParameter);
}

TEST(Decrypt, PrintedKeyRecoversHey) {
  const auto p = decrypt(printed_d, printed_e, {{36, 25, 15}});
  EXPECT_EQ(p, (std::vector<RowVector>{{7, 4, 24}}));
  EXPECT_EQ(decode_text(p, 0), "HEY");
}

TEST(Decrypt, CiphertextBIsZeroPlaintext) {
  EXPECT_EQ(decrypt(printed_d, printed_e, {b_vector(printed_e)}).front(), (RowVector{0, 0, 0}));
}

TEST(Decrypt, InvertsEncryptForRandomKeysAndBlocks) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    ResidueMatrix e(p47, n);
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e.set(i, j, gen() % 47);
    } while (e.determinant() == 0);
    std::vector<RowVector> blocks(1 + gen() % 4, RowVector(n));
    for (auto& b : blocks)
      for (auto& x : b) x = gen() % 47;
    EXPECT_EQ(decrypt(mat_inv(e), e, encrypt(e, blocks)), blocks);
  }
}

TEST(TextMode, WorkedExampleRoundTrip) {
  const auto keys = example_keys();
  const auto session = make_session(keys.public_key, 3, 7, 15);
  const auto msg = encrypt_text(keys.public_key, session, "HEY");
  EXPECT_EQ(render_symbols(msg.blocks), "PL5");
  EXPECT_EQ(decrypt_text(keys.secret_key, keys.public_key, msg), "HEY");
}

TEST(TextMode, PaddingEdgeCases) {
  const auto keys = example_keys();
  const auto session = make_session(keys.public_key, 4, 3, 11);
  for (std::string s : {"", "A", "AB", "ABC", "ABCD", "++", "+++", "HELLO WORLD"}) {
    if (s.find(' ') != std::string::npos) {
      EXPECT_THROW(encrypt_text(keys.public_key, session, s), UnsupportedSymbol);
      continue;
    }
    const auto msg = encrypt_text(keys.public_key, session, s);
    EXPECT_EQ(msg.pad_count, (3 - s.size() % 3) % 3);
    EXPECT_EQ(decrypt_text(keys.secret_key, keys.public_key, msg), s);
  }
}

TEST(TextMode, RequiresModulus47) {
  const auto keys = keygen({3, 101, 2, 1, 2, 3});
  EXPECT_THROW(encrypt_text(keys.public_key, make_session(keys.public_key, 1, 1, 1), "A"),
               InvalidParameter);
}

TEST(NumericMode, RoundTripAtLargePrime) {
  const auto keys = keygen({4, 1000003, 7, 3, 5, 8});
  const auto session = make_session(keys.public_key, 6, 2, 9);
  const RowVector values{1, 999999, 5, 77, 1000002, 42, 0};
  const auto msg = encrypt_blocks(keys.public_key, session,
                                  encode_residues(values, 4, keys.public_key.modulus));
  const auto plain = decrypt_blocks(keys.secret_key, keys.public_key, msg);
  EXPECT_EQ(decode_residues(plain.blocks, plain.pad_count), values);
}

TEST(Keygen, RejectsSingularPublicMatrix) {
  // G = H collapses K_l to l·G^{l-1}·K, which vanishes when p divides l.
  EXPECT_THROW(keygen({2, 29, 29, 3, 3, 1}), DegenerateKey);
  EXPECT_NO_THROW(keygen({2, 29, 28, 3, 3, 1}));
}
