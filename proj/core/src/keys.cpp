#include "sidon/crypto/keys.hpp"

#include <utility>

#include "sidon/error.hpp"
#include "sidon/ff/irreducible.hpp"

namespace sidon::crypto {

namespace {

Matrix checked_inverse(const GFq& f, const Matrix& m, const char* name) {
  auto inv = linalg::inverse(f, m);
  if (!inv) throw InputError(std::string(name) + " is not invertible");
  return std::move(*inv);
}

}  // namespace

PrivateKey::PrivateKey(space::SidonSpace space, Matrix a, Matrix e, std::vector<Coeff> p_r)
    : space_(std::move(space)), a_(std::move(a)), e_(std::move(e)), p_r_(std::move(p_r)) {
  const GFq& fq = ctx().fq();
  if (a_.rows() != k() || a_.cols() != k()) throw InputError("A must be k x k");
  if (e_.rows() != n() || e_.cols() != n()) throw InputError("E must be n x n");
  a_inv_ = checked_inverse(fq, a_, "A");
  e_inv_ = checked_inverse(fq, e_, "E");
  if (p_r_.size() != k() + 1 || !ff::is_irreducible(fq, p_r_)) {
    throw InputError("P_R must be a monic irreducible polynomial of degree k");
  }
  nu_.reserve(k());
  for (std::size_t j = 0; j < k(); ++j) {
    const Vector column = a_.column(j);
    nu_.push_back(space::sidon_element(space_, ctx().fk().unflatten(column)));
  }
}

std::vector<GFqn::Elem> PrivateKey::beta() const {
  std::vector<GFqn::Elem> out;
  out.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) out.push_back(ctx().unflatten(e_.column(i)));
  return out;
}

GFqn::Elem PrivateKey::v_element(std::span<const Coeff> x) const {
  const Vector u = linalg::apply(ctx().fq(), a_, x);
  return space::sidon_element(space_, ctx().fk().unflatten(u));
}

std::vector<Matrix> coefficient_matrices(const GFqn& field, const std::vector<GFqn::Elem>& nu,
                                         const std::vector<GFqn::Elem>& beta) {
  const GFq& fq = field.base().base();
  const std::size_t n = field.dimension();
  if (beta.size() != n) throw InputError("beta must have n elements");
  Matrix basis(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto flat = field.flatten(beta[i]);
    for (std::size_t r = 0; r < n; ++r) basis(r, i) = flat[r];
  }
  const auto inv = linalg::inverse(fq, basis);
  if (!inv) throw InputError("beta is not a basis");

  const std::size_t k = nu.size();
  std::vector<Matrix> out(n, Matrix(k, k, 0));
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s; t < k; ++t) {
      const auto flat = field.flatten(field.mul(nu[s], nu[t]));
      const Vector coords = linalg::apply(fq, *inv, std::span<const Coeff>(flat));
      for (std::size_t i = 0; i < n; ++i) {
        out[i](s, t) = coords[i];
        out[i](t, s) = coords[i];
      }
    }
  }
  return out;
}

PublicKey derive_public_key(const PrivateKey& priv) {
  PublicKey pub;
  pub.q = priv.q();
  pub.k = priv.k();
  pub.n = priv.n();
  pub.matrices = coefficient_matrices(priv.ctx().fn(), priv.nu(), priv.beta());
  pub.p_r = priv.p_r();
  return pub;
}

KeyPair keygen(std::uint32_t q, std::size_t k, SplitMix64& rng) {
  auto space = space::construct_sidon_2k(q, k, rng);
  const GFq& fq = space.ctx().fq();
  Matrix a = linalg::random_invertible(fq, k, rng);
  Matrix e = linalg::random_invertible(fq, 2 * k, rng);
  auto p_r = ff::random_irreducible(fq, k, rng);
  PrivateKey priv(std::move(space), std::move(a), std::move(e), std::move(p_r));
  PublicKey pub = derive_public_key(priv);
  return {std::move(priv), std::move(pub)};
}

}  // namespace sidon::crypto
