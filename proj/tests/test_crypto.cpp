#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "sidon/crypto/cipher.hpp"
#include "sidon/crypto/codec.hpp"
#include "sidon/crypto/keys.hpp"
#include "sidon/crypto/serialization.hpp"
#include "sidon/error.hpp"

namespace sidon::crypto {
namespace {

std::vector<Vector> nonzero_vectors(std::uint32_t q, std::size_t k) {
  std::vector<Vector> out;
  const auto total = static_cast<std::uint64_t>(ipow(q, k));
  for (std::uint64_t index = 1; index < total; ++index) {
    Vector v(k);
    std::uint64_t rest = index;
    for (auto& c : v) {
      c = static_cast<Coeff>(rest % q);
      rest /= q;
    }
    out.push_back(v);
  }
  return out;
}

// Oracle: rank-one matrices a^T b identified with their transposes.
std::uint64_t brute_force_q_k(std::uint32_t q, std::size_t k) {
  const GFq f(q);
  std::set<std::vector<Coeff>> classes;
  const auto vectors = nonzero_vectors(q, k);
  for (const auto& a : vectors) {
    for (const auto& b : vectors) {
      std::vector<Coeff> m(k * k), t(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          m[i * k + j] = f.mul(a[i], b[j]);
          t[j * k + i] = m[i * k + j];
        }
      }
      classes.insert(std::min(m, t));
    }
  }
  return classes.size();
}

TEST(Codec, MessageSpaceSizeMatchesBruteForce) {
  EXPECT_EQ(msg_space_size(3, 1), 2);
  EXPECT_EQ(msg_space_size(3, 2), 20);
  EXPECT_EQ(msg_space_size(3, 3), 182);
  EXPECT_EQ(msg_space_size(3, 1), brute_force_q_k(3, 1));
  EXPECT_EQ(msg_space_size(3, 2), brute_force_q_k(3, 2));
  EXPECT_EQ(msg_space_size(3, 3), brute_force_q_k(3, 3));
  EXPECT_EQ(msg_space_size(5, 2), brute_force_q_k(5, 2));
  EXPECT_EQ(msg_space_size(5, 2), 84);
  EXPECT_EQ(msg_space_size(7, 2), brute_force_q_k(7, 2));
}

TEST(Codec, InformationRate) {
  for (std::uint32_t q : {3U, 5U, 7U, 53U}) {
    for (std::size_t k : {3UL, 4UL, 5UL, 8UL}) {
      const double rate = std::log(msg_space_size(q, k).convert_to<double>()) / std::log(double(q));
      EXPECT_GT(rate, 2.0 * k - 2);
      EXPECT_LE(rate, 2.0 * k - 1);
    }
  }
}

TEST(Codec, CanonicalizeExample) {
  const auto c = canonicalize(3, Vector{2, 0, 1}, Vector{1, 1, 0});
  EXPECT_EQ(c.a, (Vector{1, 0, 2}));
  EXPECT_EQ(c.b, (Vector{2, 2, 0}));
  EXPECT_THROW(canonicalize(3, Vector{0, 0, 0}, Vector{1, 1, 0}), InputError);
}

TEST(Codec, CanonicalizeOrbitInvariant) {
  const GFq f(7);
  SplitMix64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    Vector a(4), b(4);
    do {
      for (auto& x : a) x = f.random(rng);
    } while (a == Vector(4, 0));
    do {
      for (auto& x : b) x = f.random(rng);
    } while (b == Vector(4, 0));
    const Coeff l = 1 + static_cast<Coeff>(rng.uniform(6));
    Vector la = a, lb = b;
    for (auto& x : la) x = f.mul(l, x);
    for (auto& x : lb) x = f.div(x, l);
    const auto c = canonicalize(7, a, b);
    EXPECT_EQ(canonicalize(7, la, lb), c);
    EXPECT_EQ(canonicalize(7, b, a), c);
    EXPECT_EQ(canonicalize(7, c.a, c.b), c);
  }
  const auto sym = canonicalize(3, Vector{2, 1, 0}, Vector{2, 1, 0});
  EXPECT_EQ(rank_projective(3, sym.a), rank_projective(3, sym.b));
}

TEST(Codec, ExhaustiveBijection) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {5U, 2UL}, {3U, 4UL}, {7U, 2UL}}) {
    const auto size = static_cast<std::uint64_t>(msg_space_size(q, k));
    std::set<MessageClass> seen;
    std::uint64_t symmetric = 0;
    for (std::uint64_t m = 0; m < size; ++m) {
      const auto c = encode_message(q, k, m);
      EXPECT_EQ(canonicalize(q, c.a, c.b), c);
      EXPECT_EQ(decode_message(q, k, c), m);
      seen.insert(c);
      symmetric += rank_projective(q, c.a) == rank_projective(q, c.b) ? 1 : 0;
    }
    EXPECT_EQ(seen.size(), size);
    EXPECT_EQ(symmetric, static_cast<std::uint64_t>(ipow(q, k)) - 1);
  }
  const auto first = encode_message(3, 3, 0);
  EXPECT_EQ(first.a, (Vector{1, 0, 0}));
  EXPECT_EQ(first.b, (Vector{1, 0, 0}));
  EXPECT_THROW(encode_message(3, 3, 182), InputError);
  EXPECT_THROW(encode_message(3, 3, -1), InputError);
}

// Every pair of nonzero vectors lands on one of the enumerated classes.
TEST(Codec, EncodeCoversAllPairs) {
  const auto vectors = nonzero_vectors(3, 3);
  std::set<MessageClass> all;
  for (std::uint64_t m = 0; m < 182; ++m) all.insert(encode_message(3, 3, m));
  for (const auto& a : vectors) {
    for (const auto& b : vectors) EXPECT_EQ(all.count(canonicalize(3, a, b)), 1U);
  }
}

TEST(Codec, LargeParameters) {
  const BigInt size = msg_space_size(541, 40);
  const std::vector<BigInt> samples{0, size - 1, size / 2, size / 3 + 17, (ipow(541, 40) - 1) * 2};
  for (const BigInt& m : samples) EXPECT_EQ(decode_message(541, 40, encode_message(541, 40, m)), m);
}

TEST(Keys, ShapeAndDeterminism) {
  SplitMix64 a(1), b(1);
  const auto k1 = keygen(3, 3, a);
  const auto k2 = keygen(3, 3, b);
  EXPECT_EQ(k1.pub.matrices.size(), 6U);
  for (const auto& m : k1.pub.matrices) {
    EXPECT_EQ(m.rows(), 3U);
    EXPECT_EQ(linalg::transpose(m), m);
  }
  EXPECT_EQ(to_json(k1.pub), to_json(k2.pub));
  EXPECT_EQ(to_json(k1.priv), to_json(k2.priv));
}

TEST(Keys, ReconstructionAndSpan) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {5U, 4UL}, {3U, 5UL}}) {
    SplitMix64 rng(q + k);
    const auto keys = keygen(q, k, rng);
    const auto& fn = keys.priv.ctx().fn();
    const auto beta = keys.priv.beta();
    // sum_i beta_i M^(i) = nu^T nu
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t t = 0; t < k; ++t) {
        GFqn::Elem acc = fn.zero();
        for (std::size_t i = 0; i < 2 * k; ++i) {
          acc = fn.add(acc, fn.scale(fn.base().scalar(keys.pub.matrices[i](s, t)), beta[i]));
        }
        EXPECT_EQ(acc, fn.mul(keys.priv.nu()[s], keys.priv.nu()[t]));
      }
    }
    Matrix span(0, linalg::triangle_size(k), 0);
    for (const auto& m : keys.pub.matrices) span.append_row(linalg::vectorize_upper(m));
    EXPECT_EQ(linalg::rank(GFq(q), span), 2 * k);
  }
}

TEST(Keys, CoefficientMatricesTrivialCase) {
  SplitMix64 rng(2);
  const auto keys = keygen(3, 3, rng);
  const auto& fn = keys.priv.ctx().fn();
  std::vector<GFqn::Elem> canonical;
  for (std::size_t i = 0; i < 6; ++i) {
    std::vector<Coeff> e(6, 0);
    e[i] = 1;
    canonical.push_back(fn.unflatten(e));
  }
  const auto m = coefficient_matrices(fn, {fn.one()}, canonical);
  EXPECT_EQ(m[0], Matrix(1, 1, Vector{1}));
  for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(m[i], Matrix(1, 1, Vector{0}));
  std::vector<GFqn::Elem> dependent(6, fn.one());
  EXPECT_THROW(coefficient_matrices(fn, {fn.one()}, dependent), InputError);
}

TEST(Cipher, EncryptBilinearity) {
  SplitMix64 rng(5);
  const auto keys = keygen(7, 3, rng);
  const GFq f(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto msg = encode_message(7, 3, rng.uniform(static_cast<std::uint64_t>(msg_space_size(7, 3))));
    const Coeff l = 1 + static_cast<Coeff>(rng.uniform(6));
    Vector la = msg.a, lb = msg.b;
    for (auto& x : la) x = f.mul(l, x);
    for (auto& x : lb) x = f.div(x, l);
    EXPECT_EQ(encrypt(keys.pub, la, lb), encrypt(keys.pub, msg));
    EXPECT_EQ(encrypt(keys.pub, msg.b, msg.a), encrypt(keys.pub, msg));
  }
  PublicKey unit{3, 2, 1, {Matrix(2, 2, Vector{0, 1, 1, 0})}, std::nullopt};
  EXPECT_EQ(encrypt(unit, Vector{1, 0}, Vector{0, 1}), Vector{1});
  EXPECT_THROW(encrypt(keys.pub, Vector{1, 0}, Vector{0, 1}), InputError);
}

TEST(Cipher, RoundTrip) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {5U, 3UL}, {3U, 4UL}, {7U, 3UL}, {13U, 5UL}}) {
    SplitMix64 rng(q * 31 + k);
    const auto keys = keygen(q, k, rng);
    const auto size = msg_space_size(q, k);
    for (int trial = 0; trial < 200; ++trial) {
      const BigInt m = rng.uniform(static_cast<std::uint64_t>(size));
      const auto msg = encode_message(q, k, m);
      const auto ct = encrypt(keys.pub, msg);
      EXPECT_NE(ct, Vector(2 * k, 0));
      EXPECT_EQ(decrypt(keys.priv, ct), msg);
    }
    // Symmetric messages exercise the double-root branch.
    for (std::uint64_t m = 0; m < 10; ++m) EXPECT_EQ(decrypt(keys.priv, encrypt(keys.pub, encode_message(q, k, m))), encode_message(q, k, m));
  }
}

TEST(Cipher, InjectiveOnMessageSpace) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SplitMix64 rng(seed);
    const auto keys = keygen(3, 3, rng);
    std::set<Vector> cts;
    for (std::uint64_t m = 0; m < 182; ++m) cts.insert(encrypt(keys.pub, encode_message(3, 3, m)));
    EXPECT_EQ(cts.size(), 182U);
  }
}

// A random vector is a valid ciphertext with probability 182*2/728 = 1/2, so
// failures are common but must always be reported as DecryptionFailure, and
// successes must re-encrypt to the same vector.
TEST(Cipher, TamperedCiphertexts) {
  SplitMix64 rng(8);
  const auto keys = keygen(3, 3, rng);
  const GFq f(3);
  int failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Vector ct(6);
    for (auto& x : ct) x = f.random(rng);
    try {
      const auto msg = decrypt(keys.priv, ct);
      Vector re = encrypt(keys.pub, msg);
      // A decrypted class re-encrypts to a nonzero scalar multiple of ct.
      std::size_t lead = 0;
      while (ct[lead] == 0) ++lead;
      const Coeff l = f.div(re[lead], ct[lead]);
      for (auto& x : ct) x = f.mul(l, x);
      EXPECT_EQ(re, ct);
    } catch (const DecryptionFailure&) {
      ++failures;
    }
  }
  EXPECT_GT(failures, 100);
  EXPECT_THROW(decrypt(keys.priv, Vector(6, 0)), DecryptionFailure);
  EXPECT_THROW(decrypt(keys.priv, Vector(5, 1)), InputError);
}

TEST(Randomized, RoundTripExact) {
  SplitMix64 rng(9);
  const auto keys = keygen(3, 3, rng);
  const GFq f(3);
  EXPECT_EQ(randomized_decrypt(keys.priv, randomized_encrypt(keys.pub, Vector{1, 0, 0}, rng)), (Vector{1, 0, 0}));
  for (int trial = 0; trial < 200; ++trial) {
    Vector a(3);
    do {
      for (auto& x : a) x = f.random(rng);
    } while (a == Vector(3, 0));
    EXPECT_EQ(randomized_decrypt(keys.priv, randomized_encrypt(keys.pub, a, rng)), a);
    EXPECT_EQ(randomized_decrypt(keys.priv, randomized_encrypt_with(keys.pub, a, Vector{1, 0, 0})), a);
  }
  EXPECT_THROW(randomized_encrypt(keys.pub, Vector{0, 0, 0}, rng), InputError);
}

TEST(Randomized, CiphertextsVary) {
  SplitMix64 rng(10);
  const auto keys = keygen(3, 3, rng);
  std::set<Vector> cts;
  for (int i = 0; i < 10; ++i) cts.insert(randomized_encrypt(keys.pub, Vector{1, 2, 0}, rng));
  EXPECT_GE(cts.size(), 2U);
}

TEST(Serialization, RoundTrip) {
  SplitMix64 rng(11);
  const auto keys = keygen(5, 4, rng);
  const auto pub = public_key_from_json(to_json(keys.pub));
  EXPECT_EQ(pub, keys.pub);
  const auto priv = private_key_from_json(to_json(keys.priv));
  EXPECT_EQ(to_json(priv), to_json(keys.priv));
  EXPECT_EQ(priv.a(), keys.priv.a());
  EXPECT_EQ(priv.e(), keys.priv.e());
  EXPECT_EQ(derive_public_key(priv), keys.pub);
  const Ciphertext ct{5, encrypt(keys.pub, encode_message(5, 4, 77))};
  EXPECT_EQ(ciphertext_from_json(to_json(ct)), ct);
  std::uint32_t q = 0;
  EXPECT_EQ(matrix_from_json(matrix_to_json(5, keys.priv.e()), &q), keys.priv.e());
  EXPECT_EQ(q, 5U);
}

TEST(Serialization, FieldOrder) {
  SplitMix64 rng(12);
  const auto keys = keygen(3, 3, rng);
  const auto text = to_json(keys.priv);
  std::size_t last = 0;
  for (const char* name : {"\"schema\"", "\"q\"", "\"k\"", "\"modulusK\"", "\"b\"", "\"c\"", "\"A\"", "\"E\"", "\"P_R\""}) {
    const auto pos = text.find(name);
    ASSERT_NE(pos, std::string::npos) << name;
    EXPECT_GT(pos, last);
    last = pos;
  }
}

TEST(Serialization, RejectsMalformed) {
  EXPECT_THROW(public_key_from_json("{"), InputError);
  EXPECT_THROW(public_key_from_json("{\"schema\":1}"), InputError);
  EXPECT_THROW(ciphertext_from_json("{\"schema\":1,\"q\":3,\"n\":2,\"ct\":[1,3]}"), InputError);
  EXPECT_THROW(ciphertext_from_json("{\"schema\":1,\"q\":4,\"n\":2,\"ct\":[1,2]}"), ParameterError);
  EXPECT_THROW(ciphertext_from_json("{\"schema\":2,\"q\":3,\"n\":2,\"ct\":[1,2]}"), InputError);
}

}  // namespace
}  // namespace sidon::crypto
