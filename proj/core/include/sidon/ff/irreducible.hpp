#pragma once

#include <cstddef>
#include <string>

#include "sidon/error.hpp"
#include "sidon/ff/polynomial.hpp"
#include "sidon/ff/prime_field.hpp"
#include "sidon/rng.hpp"

namespace sidon::ff {

/// Ben-Or test: a monic f of degree d over F (|F| = Q) is irreducible iff
/// gcd(f, x^(Q^i) - x) = 1 for every 1 <= i <= d/2.
template <class F>
bool is_irreducible(const F& f, const Poly<F>& poly) {
  Poly<F> p = poly;
  poly_trim(f, p);
  if (p.empty()) throw InputError("is_irreducible: zero polynomial");
  if (!poly_is_monic(f, p)) throw InputError("is_irreducible: polynomial must be monic");
  const long d = poly_degree<F>(p);
  if (d < 1) throw InputError("is_irreducible: degree must be >= 1");
  const BigInt field_size = f.order();
  const Poly<F> x = poly_x(f);
  Poly<F> h = poly_mod(f, x, p);
  for (long i = 1; i <= d / 2; ++i) {
    h = poly_powmod(f, h, field_size, p);
    const Poly<F> g = poly_gcd(f, p, poly_sub(f, h, x));
    if (g.size() != 1) return false;
  }
  return true;
}

/// Monic irreducible polynomial of the given degree with uniformly random
/// lower coefficients, resampled until irreducible.
template <class F>
Poly<F> random_irreducible(const F& f, std::size_t degree, SplitMix64& rng) {
  if (degree < 1) throw ParameterError("random_irreducible: degree must be >= 1");
  const std::size_t cap = 64 * degree;
  for (std::size_t trial = 0; trial < cap; ++trial) {
    Poly<F> p;
    p.reserve(degree + 1);
    for (std::size_t i = 0; i < degree; ++i) p.push_back(f.random(rng));
    p.push_back(f.one());
    if (is_irreducible(f, p)) return p;
  }
  throw InternalError("random_irreducible: no irreducible polynomial after " + std::to_string(cap) + " trials");
}

inline Poly<PrimeField> random_irreducible(std::uint32_t q, std::size_t degree, SplitMix64& rng) {
  return random_irreducible(PrimeField(q), degree, rng);
}

}  // namespace sidon::ff
