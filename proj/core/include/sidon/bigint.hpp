#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sidon {

/// Arbitrary-precision integer used for field orders, exponents and message
/// indices (q^k overflows 64 bits long before k = 40, q = 541).
using BigInt = boost::multiprecision::cpp_int;

/// base^exp.
BigInt ipow(std::uint64_t base, std::uint64_t exp);

/// Inverse of a modulo m (m >= 1, gcd(a, m) = 1). Returns 0 when m == 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Deterministic primality test for 64-bit values.
bool is_prime(std::uint64_t n);

/// Prime factorization with multiplicity, ascending (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Parses a non-negative decimal integer. Throws InputError on anything else.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& value);

}  // namespace sidon
