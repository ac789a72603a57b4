#pragma once

#include <cstdint>
#include <span>

#include "sidon/bigint.hpp"
#include "sidon/linalg/matrix.hpp"

// Messages are classes of rank-one k x k matrices a^T b over F_q modulo
// (a, b) ~ (la, l^{-1} b) and (a, b) ~ (b, a).
//
// Canonical pair: normalize a to a leading 1 (pushing the scalar into b),
// do the same for the swapped pair, keep the lexicographically smaller
// concatenation a || b.
//
// Ranking: projective points of F_q^k are ordered by the position of their
// leading 1, then by their tail read as a base-q number (first tail entry most
// significant). With N points, index m < N(q-1) is the symmetric class
// (p_m, (s+1) p_m), p = m / (q-1), s = m % (q-1). The remaining indices walk
// unordered pairs p < p' in colexicographic order, pair j = C(p',2) + p,
// again with q-1 scalars: class (p_p, (s+1) p_p').

namespace sidon::crypto {

using ff::Coeff;
using linalg::Vector;

struct MessageClass {
  Vector a;
  Vector b;

  friend bool operator==(const MessageClass&, const MessageClass&) = default;
  friend auto operator<=>(const MessageClass&, const MessageClass&) = default;
};

/// (q^k - 1)(q^k - q) / (2(q - 1)) + q^k - 1.
BigInt msg_space_size(std::uint32_t q, std::size_t k);

/// Throws InputError on a zero vector or length mismatch.
MessageClass canonicalize(std::uint32_t q, std::span<const Coeff> a, std::span<const Coeff> b);

/// Throws InputError when m is outside [0, msg_space_size).
MessageClass encode_message(std::uint32_t q, std::size_t k, const BigInt& m);

/// Inverse of encode_message; the argument need not be canonical.
BigInt decode_message(std::uint32_t q, std::size_t k, const MessageClass& msg);

/// Rank of a projective point (leading nonzero normalized away) and its inverse.
BigInt rank_projective(std::uint32_t q, std::span<const Coeff> v);
Vector unrank_projective(std::uint32_t q, std::size_t k, const BigInt& index);

}  // namespace sidon::crypto
