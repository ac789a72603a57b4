#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sidon/linalg/matrix.hpp"
#include "sidon/space/sidon_space.hpp"

namespace sidon::crypto {

using ff::Coeff;
using ff::GFq;
using ff::GFqk;
using ff::GFqn;
using linalg::Matrix;
using linalg::Vector;

/// Published data: n symmetric k x k coefficient matrices over F_q.
struct PublicKey {
  std::uint32_t q = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Matrix> matrices;
  /// Modulus of F_R for the randomized scheme, when published.
  std::optional<std::vector<Coeff>> p_r;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

/// Secret data. nu = nu' A (column j of A holds the F_{q^k} coordinates of
/// the u with nu_j = u + u^q gamma) and beta = delta E where delta is the
/// tower flattening basis (column i of E is flat(beta_i)).
class PrivateKey {
 public:
  PrivateKey(space::SidonSpace space, Matrix a, Matrix e, std::vector<Coeff> p_r);

  const space::SidonSpace& space() const { return space_; }
  const ff::TowerContext& ctx() const { return space_.ctx(); }
  std::uint32_t q() const { return ctx().q(); }
  std::size_t k() const { return ctx().k(); }
  std::size_t n() const { return ctx().n(); }

  const Matrix& a() const { return a_; }
  const Matrix& e() const { return e_; }
  const Matrix& a_inv() const { return a_inv_; }
  const Matrix& e_inv() const { return e_inv_; }
  const std::vector<Coeff>& p_r() const { return p_r_; }

  /// nu_1..nu_k.
  const std::vector<GFqn::Elem>& nu() const { return nu_; }
  /// beta_1..beta_n.
  std::vector<GFqn::Elem> beta() const;

  /// Element of V with coordinates x in the basis nu.
  GFqn::Elem v_element(std::span<const Coeff> x) const;

 private:
  space::SidonSpace space_;
  Matrix a_;
  Matrix e_;
  Matrix a_inv_;
  Matrix e_inv_;
  std::vector<Coeff> p_r_;
  std::vector<GFqn::Elem> nu_;
};

struct KeyPair {
  PrivateKey priv;
  PublicKey pub;
};

/// Draw order after the Sidon space: A, E, P_R.
KeyPair keygen(std::uint32_t q, std::size_t k, SplitMix64& rng);

/// Public key derived from a private key (P_R included).
PublicKey derive_public_key(const PrivateKey& priv);

/// M^(i)_{s,t} = beta_i-coordinate of nu_s nu_t. Throws InputError when beta
/// is not a basis.
std::vector<Matrix> coefficient_matrices(const GFqn& field, const std::vector<GFqn::Elem>& nu,
                                         const std::vector<GFqn::Elem>& beta);

}  // namespace sidon::crypto
