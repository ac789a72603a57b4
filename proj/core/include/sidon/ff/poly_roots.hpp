#pragma once

#include <optional>

#include "sidon/error.hpp"
#include "sidon/ff/polynomial.hpp"
#include "sidon/rng.hpp"

namespace sidon::ff {

/// One root in F of a nonzero polynomial, or nullopt if it has none.
/// Cantor-Zassenhaus splitting (odd characteristic): restrict to the product
/// of linear factors gcd(p, x^Q - x), then split with gcd(g, (x + d)^((Q-1)/2) - 1)
/// for random d until a linear factor remains.
template <class F>
std::optional<typename F::Elem> find_root(const F& f, Poly<F> p, SplitMix64& rng) {
  poly_trim(f, p);
  if (p.empty()) throw InputError("find_root: zero polynomial");
  p = poly_make_monic(f, p);
  if (p.size() == 1) return std::nullopt;
  if (f.is_zero(p[0])) return f.zero();

  const BigInt order = f.order();
  const Poly<F> x = poly_x(f);
  Poly<F> g = poly_gcd(f, p, poly_sub(f, poly_powmod(f, x, order, p), x));
  if (g.size() == 1) return std::nullopt;

  const BigInt half = (order - 1) / 2;
  // Each draw splits a product of >= 2 distinct linear factors with
  // probability >= 1/2.
  for (int trial = 0; g.size() > 2; ++trial) {
    if (trial > 4096) throw InternalError("find_root: splitting did not converge");
    const Poly<F> shifted{f.random(rng), f.one()};
    Poly<F> h = poly_powmod(f, shifted, half, g);
    h = poly_sub(f, h, Poly<F>{f.one()});
    const Poly<F> d = poly_gcd(f, g, h);
    if (d.size() > 1 && d.size() < g.size()) g = 2 * d.size() <= g.size() + 1 ? d : poly_divmod(f, g, d).first;
  }
  return f.neg(g[0]);
}

}  // namespace sidon::ff
