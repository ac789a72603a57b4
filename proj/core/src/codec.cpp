#include "sidon/crypto/codec.hpp"

#include <algorithm>

#include "sidon/error.hpp"
#include "sidon/ff/prime_field.hpp"
#include "sidon/space/sidon_space.hpp"

namespace sidon::crypto {

namespace {

BigInt projective_count(std::uint32_t q, std::size_t k) { return (ipow(q, k) - 1) / (q - 1); }

BigInt choose2(const BigInt& x) { return x * (x - 1) / 2; }

// Largest p' with C(p', 2) <= j.
BigInt colex_top(const BigInt& j) {
  BigInt p = boost::multiprecision::sqrt(BigInt(2 * j));
  while (choose2(p + 1) <= j) ++p;
  while (choose2(p) > j) --p;
  return p;
}

Vector scaled(const ff::GFq& f, Coeff s, std::span<const Coeff> v) {
  Vector out(v.begin(), v.end());
  for (auto& x : out) x = f.mul(s, x);
  return out;
}

bool is_zero_vector(std::span<const Coeff> v) {
  return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

}  // namespace

BigInt msg_space_size(std::uint32_t q, std::size_t k) {
  const BigInt qk = ipow(q, k);
  return (qk - 1) * (qk - q) / (2 * (q - 1)) + qk - 1;
}

MessageClass canonicalize(std::uint32_t q, std::span<const Coeff> a, std::span<const Coeff> b) {
  const ff::GFq f(q);
  if (a.size() != b.size()) throw InputError("message vectors differ in length");
  if (is_zero_vector(a) || is_zero_vector(b)) throw InputError("message vectors must be nonzero");
  auto oriented = [&](std::span<const Coeff> x, std::span<const Coeff> y) {
    MessageClass m{Vector(x.begin(), x.end()), Vector()};
    const Coeff lead = space::normalize_leading(f, m.a);
    m.b = scaled(f, lead, y);
    return m;
  };
  MessageClass first = oriented(a, b);
  MessageClass second = oriented(b, a);
  return std::min(first, second);
}

BigInt rank_projective(std::uint32_t q, std::span<const Coeff> v) {
  std::size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) throw InputError("zero vector has no projective rank");
  const ff::GFq f(q);
  const Coeff inv = f.inv(v[lead]);
  BigInt offset = 0;
  for (std::size_t p = 0; p < lead; ++p) offset += ipow(q, v.size() - 1 - p);
  BigInt tail = 0;
  for (std::size_t i = lead + 1; i < v.size(); ++i) tail = tail * q + f.mul(inv, v[i]);
  return offset + tail;
}

Vector unrank_projective(std::uint32_t q, std::size_t k, const BigInt& index) {
  BigInt rest = index;
  for (std::size_t lead = 0; lead < k; ++lead) {
    const BigInt block = ipow(q, k - 1 - lead);
    if (rest >= block) {
      rest -= block;
      continue;
    }
    Vector v(k, 0);
    v[lead] = 1;
    for (std::size_t i = k; i-- > lead + 1;) {
      v[i] = static_cast<Coeff>(rest % q);
      rest /= q;
    }
    return v;
  }
  throw InputError("projective index out of range");
}

MessageClass encode_message(std::uint32_t q, std::size_t k, const BigInt& m) {
  if (m < 0 || m >= msg_space_size(q, k)) throw InputError("message index out of range");
  const ff::GFq f(q);
  const BigInt n_points = projective_count(q, k);
  const BigInt symmetric = n_points * (q - 1);
  if (m < symmetric) {
    const Vector p = unrank_projective(q, k, m / (q - 1));
    const Coeff s = static_cast<Coeff>(m % (q - 1)) + 1;
    return canonicalize(q, p, scaled(f, s, p));
  }
  const BigInt rest = m - symmetric;
  const BigInt pair = rest / (q - 1);
  const Coeff s = static_cast<Coeff>(rest % (q - 1)) + 1;
  const BigInt top = colex_top(pair);
  const BigInt low = pair - choose2(top);
  const Vector a = unrank_projective(q, k, low);
  const Vector b = unrank_projective(q, k, top);
  return canonicalize(q, a, scaled(f, s, b));
}

BigInt decode_message(std::uint32_t q, std::size_t k, const MessageClass& msg) {
  if (msg.a.size() != k || msg.b.size() != k) throw InputError("message vectors must have length k");
  const MessageClass c = canonicalize(q, msg.a, msg.b);
  const ff::GFq f(q);
  Vector b_hat = c.b;
  const Coeff mu = space::normalize_leading(f, b_hat);
  const BigInt pa = rank_projective(q, c.a);
  const BigInt pb = rank_projective(q, b_hat);
  if (pa == pb) return pa * (q - 1) + (mu - 1);
  // Swapping (a, mu b^) to (b^, mu a) keeps the scalar.
  const BigInt low = pa < pb ? pa : pb;
  const BigInt top = pa < pb ? pb : pa;
  return projective_count(q, k) * (q - 1) + (choose2(top) + low) * (q - 1) + (mu - 1);
}

}  // namespace sidon::crypto
