#include "sidon/bigint.hpp"

#include "sidon/error.hpp"

namespace sidon {

BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt old_r = ((a % m) + m) % m;
  BigInt r = m;
  BigInt old_s = 1;
  BigInt s = 0;
  while (r != 0) {
    const BigInt quotient = old_r / r;
    BigInt tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw InputError("mod_inverse: arguments are not coprime");
  return ((old_s % m) + m) % m;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // Miller-Rabin with the first twelve primes as bases is exact below 2^64.
  __extension__ using u128 = unsigned __int128;
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1U) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1U;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw InputError("expected a decimal integer, got an empty string");
  BigInt value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw InputError("expected a decimal integer, got '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

}  // namespace sidon
