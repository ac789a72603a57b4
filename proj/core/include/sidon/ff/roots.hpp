#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sidon/bigint.hpp"
#include "sidon/error.hpp"
#include "sidon/ff/power.hpp"

// Root extraction in a finite field F with |F| = Q:
//   * m-th power tests by Euler's criterion (m | Q - 1),
//   * p-th roots for primes p | Q - 1 by Adleman-Manders-Miller (Tonelli-Shanks
//     for p = 2),
//   * r-th roots for composite r | Q - 1 by peeling one prime at a time,
//   * monic quadratics through the discriminant (odd characteristic).

namespace sidon::ff {

/// True iff a is an m-th power in F (m must divide |F| - 1). Zero counts.
template <class F>
bool is_power(const F& f, const typename F::Elem& a, std::uint64_t m) {
  if (f.is_zero(a)) return true;
  const BigInt q1 = f.order() - 1;
  if (q1 % m != 0) throw InputError("is_power: m must divide |F| - 1");
  return f.is_one(power(f, a, BigInt(q1 / m)));
}

template <class F>
bool is_square(const F& f, const typename F::Elem& a) {
  return is_power(f, a, 2);
}

/// c in W_{q-1} = {u^(q-1)}, q the characteristic, c != 0.
template <class F>
bool is_qm1_power(const F& f, const typename F::Elem& c) {
  if (f.is_zero(c)) throw InputError("is_qm1_power: c must be nonzero");
  const BigInt exponent = (f.order() - 1) / (f.characteristic() - 1);
  return f.is_one(power(f, c, exponent));
}

namespace detail {

/// Deterministic element that is not a p-th power: first one in index order.
template <class F>
typename F::Elem non_pth_power(const F& f, std::uint64_t p) {
  for (BigInt index = 2; index < f.order(); ++index) {
    auto candidate = f.element_from_index(index);
    if (!is_power(f, candidate, p)) return candidate;
  }
  throw InternalError("no p-th power non-residue found");
}

}  // namespace detail

/// Some w with w^p = a, for a prime p dividing |F| - 1; nullopt when a is not
/// a p-th power. Adleman-Manders-Miller: a^(p^{-1} mod t) fixes the part of
/// the error coprime to p, the Sylow-p part is solved digit by digit.
template <class F>
std::optional<typename F::Elem> pth_root(const F& f, const typename F::Elem& a, std::uint64_t p) {
  using Elem = typename F::Elem;
  if (f.is_zero(a)) return a;
  if (!is_power(f, a, p)) return std::nullopt;
  const BigInt q1 = f.order() - 1;
  std::uint64_t s = 0;
  BigInt t = q1;
  while (t % p == 0) {
    t /= p;
    ++s;
  }
  const BigInt a_exp = mod_inverse(BigInt(p), t);
  const Elem x = power(f, a, a_exp);
  // eps = x^p / a lies in the cyclic Sylow-p subgroup P of order p^s.
  const Elem eps = f.div(power(f, x, p), a);
  if (f.is_one(eps)) return x;

  const Elem z = power(f, detail::non_pth_power(f, p), t);  // generates P
  const Elem z_inv = f.inv(z);
  const Elem unit_root = power(f, z, ipow(p, s - 1));  // order p
  std::vector<Elem> unit_powers;
  unit_powers.reserve(p);
  Elem acc = f.one();
  for (std::uint64_t j = 0; j < p; ++j) {
    unit_powers.push_back(acc);
    acc = f.mul(acc, unit_root);
  }

  // Discrete log of eps^{-1} to base z, digits base p.
  const Elem target = f.inv(eps);
  BigInt log = 0;
  BigInt place = 1;
  for (std::uint64_t i = 0; i < s; ++i) {
    const Elem residual = f.mul(target, power(f, z_inv, log));
    const Elem h = power(f, residual, ipow(p, s - 1 - i));
    const auto it = std::find(unit_powers.begin(), unit_powers.end(), h);
    if (it == unit_powers.end()) throw InternalError("pth_root: digit lookup failed");
    log += place * static_cast<std::uint64_t>(it - unit_powers.begin());
    place *= p;
  }
  if (log % p != 0) throw InternalError("pth_root: Sylow component is not a p-th power");
  return f.mul(x, power(f, z, BigInt(log / p)));
}

/// Some w with w^r = a for r dividing |F| - 1 (any factorization of r);
/// nullopt when a is not an r-th power. Each prime is peeled off by picking,
/// among the p conjugate p-th roots, one that remains an (r/p)-th power.
template <class F>
std::optional<typename F::Elem> rth_root(const F& f, const typename F::Elem& a, std::uint64_t r) {
  using Elem = typename F::Elem;
  if (r == 0) throw InputError("rth_root: r must be positive");
  if (f.is_zero(a)) throw InputError("rth_root: a must be nonzero");
  if (!is_power(f, a, r)) return std::nullopt;
  Elem current = a;
  std::uint64_t remaining = r;
  for (std::uint64_t p : prime_factors(r)) {
    remaining /= p;
    const auto w0 = pth_root(f, current, p);
    if (!w0) throw InternalError("rth_root: lost the power property");
    const Elem zeta = power(f, detail::non_pth_power(f, p), BigInt((f.order() - 1) / p));
    Elem candidate = *w0;
    bool found = false;
    for (std::uint64_t j = 0; j < p; ++j) {
      if (is_power(f, candidate, remaining)) {
        found = true;
        break;
      }
      candidate = f.mul(candidate, zeta);
    }
    if (!found) throw InternalError("rth_root: no conjugate root is a power");
    current = candidate;
  }
  return current;
}

/// Square root in odd characteristic; of the two roots the one with the
/// lexicographically smaller coefficient vector is returned.
template <class F>
std::optional<typename F::Elem> sqrt(const F& f, const typename F::Elem& a) {
  auto w = pth_root(f, a, 2);
  if (!w) return std::nullopt;
  auto minus = f.neg(*w);
  return std::min(*w, minus);
}

template <class F>
struct QuadraticRoots {
  std::vector<typename F::Elem> roots;  // ascending lexicographic order
  bool double_root = false;
};

/// Roots in F of x^2 + s x + t (odd characteristic).
template <class F>
QuadraticRoots<F> solve_quadratic(const F& f, const typename F::Elem& s, const typename F::Elem& t) {
  QuadraticRoots<F> out;
  const auto two_inv = f.inv(f.scalar(2));
  const auto disc = f.sub(f.mul(s, s), f.mul(f.scalar(4), t));
  const auto minus_s = f.neg(s);
  if (f.is_zero(disc)) {
    out.roots.push_back(f.mul(minus_s, two_inv));
    out.double_root = true;
    return out;
  }
  const auto w = ff::sqrt(f, disc);
  if (!w) return out;
  out.roots.push_back(f.mul(f.add(minus_s, *w), two_inv));
  out.roots.push_back(f.mul(f.sub(minus_s, *w), two_inv));
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace sidon::ff
