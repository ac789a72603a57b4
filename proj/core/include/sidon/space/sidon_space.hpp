#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sidon/ff/tower.hpp"
#include "sidon/rng.hpp"

namespace sidon::space {

using ff::Coeff;
using ff::GFq;
using ff::GFqk;
using ff::GFqn;

/// V = {u + u^q gamma : u in F_{q^k}} inside the top field of a tower.
///
/// With a quadratic top extension (n = 2k) this is Construction 2 and c must
/// lie outside W_{q-1}; with degree r >= 3 it is Construction 1.
class SidonSpace {
 public:
  /// Rebuilds Construction 2 from stored parameters (key loading).
  /// Throws ParameterError on k < 3, reducible moduli or c in W_{q-1}.
  static SidonSpace from_parameters(std::uint32_t q, std::vector<Coeff> modulus_k, GFqk::Elem b, GFqk::Elem c);

  explicit SidonSpace(ff::TowerContext ctx);

  const ff::TowerContext& ctx() const { return ctx_; }
  std::size_t k() const { return ctx_.k(); }
  std::size_t n() const { return ctx_.n(); }
  GFqn::Elem gamma() const { return ctx_.gamma(); }

  /// nu'_i = omega_i + omega_i^q gamma, i = 1..k.
  const std::vector<GFqn::Elem>& basis0() const { return basis0_; }

  /// Matrix of T(x) = x - c x^q; present only for the quadratic construction.
  const std::optional<ff::LinearizedT>& linearized_t() const { return t_; }

 private:
  ff::TowerContext ctx_;
  std::vector<GFqn::Elem> basis0_;
  std::optional<ff::LinearizedT> t_;
};

/// Construction 2 with fresh randomness. Draw order: modulusK, then c
/// (uniform nonzero, rejected while in W_{q-1}), then b (until x^2 + bx + c
/// is irreducible).
SidonSpace construct_sidon_2k(std::uint32_t q, std::size_t k, SplitMix64& rng);

/// Construction 1: F_{q^{rk}} = F_{q^k}[x]/(random degree-r irreducible).
SidonSpace construct_sidon_rk(std::uint32_t q, std::size_t k, std::size_t r, SplitMix64& rng);

/// u + u^q gamma.
GFqn::Elem sidon_element(const SidonSpace& v, const GFqk::Elem& u);

struct Factorization {
  GFqk::Elem u;  // first nonzero coefficient 1
  GFqk::Elem v;  // first nonzero coefficient 1
  Coeff lambda;  // sidon_element(u) * sidon_element(v) = lambda * pi
  bool repeated = false;  // uF_q = vF_q (double root)
};

/// Recovers {uF_q, vF_q} from pi = (u + u^q gamma)(v + v^q gamma).
/// Throws FactorizationError when pi is not such a product.
Factorization factor_product(const SidonSpace& v, const GFqn::Elem& pi);

/// Exhaustive Sidon check of Span_{F_q}(basis) inside `field`. Throws
/// CapacityError when q^dim exceeds 2^14.
bool verify_sidon_bruteforce(const GFqn& field, const std::vector<GFqn::Elem>& basis);
bool verify_sidon_bruteforce(const SidonSpace& v);

/// dim_{F_q} Span{nu'_i nu'_j : i <= j}.
std::size_t dim_v_squared(const GFqn& field, const std::vector<GFqn::Elem>& basis);
std::size_t dim_v_squared(const SidonSpace& v);

/// Scales a nonzero vector so its first nonzero entry is 1; returns the
/// factor that was divided out.
template <class F>
typename F::Elem normalize_leading(const F& f, std::vector<typename F::Elem>& v) {
  for (const auto& x : v) {
    if (!f.is_zero(x)) {
      const auto lead = x;
      const auto inv = f.inv(lead);
      for (auto& y : v) y = f.mul(inv, y);
      return lead;
    }
  }
  throw InputError("cannot normalize the zero vector");
}

}  // namespace sidon::space
