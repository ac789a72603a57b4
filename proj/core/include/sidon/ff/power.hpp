#pragma once

#include <cstdint>

#include "sidon/bigint.hpp"

namespace sidon::ff {

/// a^exp in any field type, square and multiply over the bits of exp.
template <class F>
typename F::Elem power(const F& f, const typename F::Elem& a, const BigInt& exp) {
  auto result = f.one();
  if (exp == 0) return result;
  for (std::size_t bit = boost::multiprecision::msb(exp) + 1; bit-- > 0;) {
    result = f.mul(result, result);
    if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(bit))) result = f.mul(result, a);
  }
  return result;
}

template <class F>
typename F::Elem power(const F& f, const typename F::Elem& a, std::uint64_t exp) {
  auto result = f.one();
  auto base = a;
  while (exp > 0) {
    if (exp & 1U) result = f.mul(result, base);
    exp >>= 1U;
    if (exp > 0) base = f.mul(base, base);
  }
  return result;
}

}  // namespace sidon::ff
