#include "sidon/crypto/cipher.hpp"

#include <algorithm>

#include "sidon/error.hpp"

namespace sidon::crypto {

namespace {

GFqk residue_field(std::uint32_t q, const std::optional<std::vector<Coeff>>& p_r) {
  if (!p_r) throw InputError("public key carries no P_R; randomized scheme unavailable");
  return GFqk(GFq(q), *p_r);
}

}  // namespace

Vector encrypt(const PublicKey& pub, std::span<const Coeff> a, std::span<const Coeff> b) {
  if (a.size() != pub.k || b.size() != pub.k) throw InputError("message vectors must have length k");
  if (pub.matrices.size() != pub.n) throw InputError("public key must hold n matrices");
  const GFq f(pub.q);
  Vector ct(pub.n, 0);
  for (std::size_t i = 0; i < pub.n; ++i) {
    const Matrix& m = pub.matrices[i];
    if (m.rows() != pub.k || m.cols() != pub.k) throw InputError("coefficient matrix must be k x k");
    Coeff acc = 0;
    for (std::size_t s = 0; s < pub.k; ++s) {
      if (a[s] == 0) continue;
      Coeff row = 0;
      for (std::size_t t = 0; t < pub.k; ++t) row = f.add(row, f.mul(m(s, t), b[t]));
      acc = f.add(acc, f.mul(a[s], row));
    }
    ct[i] = acc;
  }
  return ct;
}

Vector encrypt(const PublicKey& pub, const MessageClass& msg) { return encrypt(pub, msg.a, msg.b); }

MessageClass decrypt(const PrivateKey& priv, std::span<const Coeff> ct) {
  if (ct.size() != priv.n()) throw InputError("ciphertext must have n entries");
  const GFq& fq = priv.ctx().fq();
  for (Coeff c : ct) {
    if (c >= fq.characteristic()) throw InputError("ciphertext entry out of range");
  }
  // sum ct_i beta_i = E ct in the flattening basis.
  const Vector flat = linalg::apply(fq, priv.e(), ct);
  const GFqn::Elem pi = priv.ctx().unflatten(flat);
  space::Factorization f;
  try {
    f = space::factor_product(priv.space(), pi);
  } catch (const FactorizationError& e) {
    throw DecryptionFailure(std::string("not a valid ciphertext: ") + e.what());
  }
  // u = A a, and s(u) s(v) = lambda pi, so pi = s(A a) s(A b) with b = lambda^{-1} A^{-1} v.
  const Vector a = linalg::apply(fq, priv.a_inv(), std::span<const Coeff>(f.u));
  Vector b = linalg::apply(fq, priv.a_inv(), std::span<const Coeff>(f.v));
  const Coeff lambda_inv = fq.inv(f.lambda);
  for (auto& x : b) x = fq.mul(lambda_inv, x);
  return canonicalize(priv.q(), a, b);
}

Vector randomized_encrypt_with(const PublicKey& pub, std::span<const Coeff> a, std::span<const Coeff> b) {
  const GFqk fr = residue_field(pub.q, pub.p_r);
  if (a.size() != pub.k || b.size() != pub.k) throw InputError("randomized scheme vectors must have length k");
  const auto a_hat = fr.unflatten(a);
  const auto b_hat = fr.unflatten(b);
  if (fr.is_zero(a_hat)) throw InputError("plaintext must be nonzero");
  if (fr.is_zero(b_hat)) throw InputError("randomizer must be nonzero");
  const auto c_hat = fr.div(a_hat, b_hat);
  return encrypt(pub, fr.flatten(c_hat), b);
}

Vector randomized_encrypt(const PublicKey& pub, std::span<const Coeff> a, SplitMix64& rng) {
  const GFqk fr = residue_field(pub.q, pub.p_r);
  GFqk::Elem b;
  do {
    b = fr.random(rng);
  } while (fr.is_zero(b));
  return randomized_encrypt_with(pub, a, b);
}

Vector randomized_decrypt(const PrivateKey& priv, std::span<const Coeff> ct) {
  const MessageClass m = decrypt(priv, ct);
  const GFqk fr(priv.ctx().fq(), priv.p_r());
  return fr.flatten(fr.mul(fr.unflatten(m.a), fr.unflatten(m.b)));
}

}  // namespace sidon::crypto
