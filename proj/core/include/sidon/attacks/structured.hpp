#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidon/attacks/polynomial_system.hpp"
#include "sidon/crypto/keys.hpp"

namespace sidon::attacks {

/// Eve's own tower for F_{q^n}: random modulusK and a random irreducible
/// x^2 + bx + c, no Sidon condition on c.
ff::TowerContext random_representation(std::uint32_t q, std::size_t k, SplitMix64& rng);

/// Field isomorphism from Alice's tower onto Eve's, y -> rho and gamma ->
/// gamma_E, with rho a root of Alice's modulusK in Eve's F_{q^k} and gamma_E a
/// root of x^2 + phi(b) x + phi(c) in Eve's F_{q^n}.
class TowerIsomorphism {
 public:
  TowerIsomorphism(const ff::TowerContext& alice, const ff::TowerContext& eve, SplitMix64& rng);

  crypto::GFqk::Elem map_k(const crypto::GFqk::Elem& x) const;
  crypto::GFqn::Elem map_n(const crypto::GFqn::Elem& x) const;

 private:
  const ff::TowerContext* eve_;
  std::vector<crypto::GFqk::Elem> rho_powers_;
  crypto::GFqn::Elem gamma_;
};

/// The structured system in Eve's representation:
///   nu'_s nu'_t = sum_i M^(i)_{s,t} beta'_i,  s >= t,
/// with nu'_i = U_i + gamma' U_i^q, U_i = sum_j u_{i,j} omega_j, gamma' =
/// sum_j g_j delta_j and beta'_i = sum_j b_{i,j} delta_j, each F_{q^n}
/// equation flattened to n equations over F_q.
///
/// quartic: variables u_i_j (k^2), g_j (n), b_i_j (n^2); k^2(k+1) equations.
/// quadratic: u_{s,t} u_{l,r} -> w_s_t_l_r and g_i g_j -> h_i_j, with
/// w (k^4), h (n^2), g (n), b (n^2) declared: k^4 + 8k^2 + 2k variables.
struct StructuredSystems {
  PolynomialSystem quartic;
  PolynomialSystem quadratic;
};

StructuredSystems structured_attack_emit(const crypto::PublicKey& pub, const ff::TowerContext& eve);

/// Planted solution for every variable of `sys` (by name). With Eve's tower
/// equal to Alice's the isomorphism is the identity; otherwise one is
/// computed from `rng`.
std::vector<Coeff> structured_ground_truth(const crypto::PrivateKey& priv, const PolynomialSystem& sys,
                                           const ff::TowerContext& eve, SplitMix64& rng);

/// Number of equations with a nonzero residual at `values`.
std::size_t count_nonzero_residuals(const PolynomialSystem& sys, const std::vector<Coeff>& values);

/// Identity mode: Eve's tower is Alice's.
bool structured_attack_verify(const crypto::PrivateKey& priv, const PolynomialSystem& sys);
bool structured_attack_verify(const crypto::PrivateKey& priv, const PolynomialSystem& sys, const ff::TowerContext& eve,
                              SplitMix64& rng);

struct StructuredReport {
  std::size_t k = 0;
  std::size_t quartic_equations = 0;
  std::size_t quartic_variables = 0;
  std::uint32_t quartic_degree = 0;
  std::size_t quadratic_equations = 0;
  std::size_t quadratic_variables = 0;
  std::uint32_t quadratic_degree = 0;
  bool quartic_verified = false;
  bool quadratic_verified = false;
  std::size_t perturbed_nonzero_residuals = 0;
};

/// Emits in identity mode, verifies both variants and perturbs one b_{i,j}.
StructuredReport structured_report(const crypto::PrivateKey& priv, const crypto::PublicKey& pub);
std::string to_json(const StructuredReport& r);

}  // namespace sidon::attacks
