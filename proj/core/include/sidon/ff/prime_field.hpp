#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sidon/bigint.hpp"
#include "sidon/error.hpp"

namespace sidon::ff {

/// Coordinate over the prime field, always reduced to [0, q).
using Coeff = std::uint32_t;

/// Arithmetic modulo an odd prime q.
///
/// All field types in this library expose the same surface (zero/one, add,
/// sub, neg, mul, inv, frobenius, flatten/unflatten, order, ...) so that the
/// polynomial, root-finding and linear-algebra templates work on every level
/// of the tower.
class PrimeField {
 public:
  using Elem = Coeff;

  /// Largest supported modulus; keeps a + b below 2^32.
  static constexpr std::uint32_t kMaxModulus = (1U << 31) - 1;

  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (q < 3 || q > kMaxModulus || !is_prime(q)) {
      throw ParameterError("q must be an odd prime >= 3, got " + std::to_string(q));
    }
  }

  std::uint32_t characteristic() const { return q_; }
  std::size_t dimension() const { return 1; }
  BigInt order() const { return BigInt(q_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem scalar(Coeff c) const { return c % q_; }
  Elem from_int(std::int64_t v) const {
    const std::int64_t r = v % static_cast<std::int64_t>(q_);
    return static_cast<Elem>(r < 0 ? r + q_ : r);
  }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }

  Elem add(Elem a, Elem b) const {
    const Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (q_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw InputError("inverse of zero in F_q");
    // Extended Euclid on machine integers.
    std::int64_t r0 = q_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t t = r0 / r1;
      std::int64_t tmp = r0 - t * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - t * s1;
      s0 = s1;
      s1 = tmp;
    }
    return from_int(s0);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem frobenius(Elem a, std::uint64_t /*times*/ = 1) const { return a; }

  void flatten_into(Elem a, std::vector<Coeff>& out) const { out.push_back(a); }
  std::vector<Coeff> flatten(Elem a) const { return {a}; }
  Elem unflatten(std::span<const Coeff> coords) const {
    if (coords.size() != 1) throw InputError("F_q element needs exactly one coordinate");
    return scalar(coords[0]);
  }

  Elem element_from_index(const BigInt& index) const { return static_cast<Elem>(index % q_); }

  template <class Rng>
  Elem random(Rng& rng) const {
    return static_cast<Elem>(rng.uniform(q_));
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
};

}  // namespace sidon::ff
