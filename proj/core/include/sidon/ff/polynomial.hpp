#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sidon/bigint.hpp"
#include "sidon/error.hpp"

namespace sidon::ff {

/// Dense univariate polynomial over a field F, little-endian coefficients.
/// Canonical form has no trailing zeros; the zero polynomial is empty.
template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void poly_trim(const F& f, Poly<F>& p) {
  while (!p.empty() && f.is_zero(p.back())) p.pop_back();
}

/// Degree, or -1 for the zero polynomial. Assumes a trimmed argument.
template <class F>
long poly_degree(const Poly<F>& p) {
  return static_cast<long>(p.size()) - 1;
}

template <class F>
Poly<F> poly_x(const F& f) {
  return Poly<F>{f.zero(), f.one()};
}

template <class F>
bool poly_is_monic(const F& f, const Poly<F>& p) {
  return !p.empty() && f.is_one(p.back());
}

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  poly_trim(f, r);
  return r;
}

template <class F>
Poly<F> poly_sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  poly_trim(f, r);
  return r;
}

template <class F>
Poly<F> poly_scale(const F& f, const typename F::Elem& s, const Poly<F>& a) {
  Poly<F> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(f.mul(s, c));
  poly_trim(f, r);
  return r;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  poly_trim(f, r);
  return r;
}

/// Quotient and remainder of a by a nonzero divisor.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, const Poly<F>& a, const Poly<F>& divisor) {
  if (divisor.empty()) throw InputError("polynomial division by zero");
  Poly<F> rem = a;
  poly_trim(f, rem);
  if (rem.size() < divisor.size()) return {Poly<F>{}, rem};
  const std::size_t dd = divisor.size() - 1;
  const auto lead_inv = f.inv(divisor.back());
  Poly<F> quot(rem.size() - dd, f.zero());
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (f.is_zero(rem[i])) continue;
    const auto t = f.mul(rem[i], lead_inv);
    quot[i - dd] = t;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(t, divisor[j]));
  }
  poly_trim(f, quot);
  poly_trim(f, rem);
  return {std::move(quot), std::move(rem)};
}

template <class F>
Poly<F> poly_mod(const F& f, const Poly<F>& a, const Poly<F>& m) {
  return poly_divmod(f, a, m).second;
}

template <class F>
Poly<F> poly_make_monic(const F& f, const Poly<F>& a) {
  if (a.empty()) return a;
  return poly_scale(f, f.inv(a.back()), a);
}

/// Monic greatest common divisor (zero when both inputs are zero).
template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    Poly<F> r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_make_monic(f, a);
}

template <class F>
Poly<F> poly_mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

/// base^exp mod m by left-to-right square and multiply.
template <class F>
Poly<F> poly_powmod(const F& f, const Poly<F>& base, const BigInt& exp, const Poly<F>& m) {
  Poly<F> result = poly_mod(f, Poly<F>{f.one()}, m);
  if (exp == 0) return result;
  const Poly<F> b = poly_mod(f, base, m);
  for (std::size_t bit = boost::multiprecision::msb(exp) + 1; bit-- > 0;) {
    result = poly_mulmod(f, result, result, m);
    if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(bit))) result = poly_mulmod(f, result, b, m);
  }
  return result;
}

template <class F>
typename F::Elem poly_eval(const F& f, const Poly<F>& p, const typename F::Elem& x) {
  auto acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

}  // namespace sidon::ff
