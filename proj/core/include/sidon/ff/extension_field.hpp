#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sidon/bigint.hpp"
#include "sidon/error.hpp"
#include "sidon/ff/polynomial.hpp"
#include "sidon/ff/prime_field.hpp"

namespace sidon::ff {

/// The field Base[x]/(g) for a monic irreducible g of degree r >= 1.
///
/// Elements are coefficient vectors of length exactly r in the power basis
/// 1, x, ..., x^{r-1}. Nesting gives towers: ExtensionField<PrimeField> is
/// F_{q^k} with basis (1, y, ..., y^{k-1}); ExtensionField of that is F_{q^{rk}}
/// with flattened basis (omega_j * x^i), i major.
///
/// Irreducibility of g is a precondition (checked by the tower builders, not
/// here, because the check needs this type's base arithmetic only).
template <class Base>
class ExtensionField {
 public:
  using BaseField = Base;
  using BaseElem = typename Base::Elem;
  using Elem = std::vector<BaseElem>;

  ExtensionField(Base base, std::vector<BaseElem> modulus) : base_(std::move(base)), modulus_(std::move(modulus)) {
    poly_trim(base_, modulus_);
    if (modulus_.size() < 2 || !poly_is_monic(base_, modulus_)) {
      throw InputError("extension modulus must be monic of degree >= 1");
    }
    // x^q mod g and its powers give the Frobenius map as a Base-linear
    // combination once the base coefficients have been Frobenius-twisted.
    const Poly<Base> xq = poly_powmod(base_, poly_x(base_), BigInt(characteristic()), modulus_);
    Poly<Base> acc{base_.one()};
    frobenius_images_.reserve(degree());
    for (std::size_t j = 0; j < degree(); ++j) {
      frobenius_images_.push_back(pad(acc));
      acc = poly_mulmod(base_, acc, xq, modulus_);
    }
  }

  const Base& base() const { return base_; }
  const std::vector<BaseElem>& modulus() const { return modulus_; }

  /// Degree over the immediate base field.
  std::size_t degree() const { return modulus_.size() - 1; }
  /// Degree over the prime field.
  std::size_t dimension() const { return degree() * base_.dimension(); }
  std::uint32_t characteristic() const { return base_.characteristic(); }
  BigInt order() const { return ipow(characteristic(), dimension()); }

  Elem zero() const { return Elem(degree(), base_.zero()); }
  Elem one() const { return embed(base_.one()); }
  /// The class of x, i.e. the generator of this extension over its base.
  Elem generator() const {
    Elem e = zero();
    if (degree() == 1) {
      e[0] = base_.neg(modulus_[0]);
    } else {
      e[1] = base_.one();
    }
    return e;
  }
  Elem embed(const BaseElem& a) const {
    Elem e = zero();
    e[0] = a;
    return e;
  }
  Elem scalar(Coeff c) const { return embed(base_.scalar(c)); }

  bool is_zero(const Elem& a) const {
    for (const auto& c : a) {
      if (!base_.is_zero(c)) return false;
    }
    return true;
  }
  bool is_one(const Elem& a) const { return a == one(); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(degree(), base_.zero());
    for (std::size_t i = 0; i < degree(); ++i) r[i] = base_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(degree(), base_.zero());
    for (std::size_t i = 0; i < degree(); ++i) r[i] = base_.sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(degree(), base_.zero());
    for (std::size_t i = 0; i < degree(); ++i) r[i] = base_.neg(a[i]);
    return r;
  }
  /// Multiplies by an element of the base field.
  Elem scale(const BaseElem& s, const Elem& a) const {
    Elem r(degree(), base_.zero());
    for (std::size_t i = 0; i < degree(); ++i) r[i] = base_.mul(s, a[i]);
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    const std::size_t r = degree();
    std::vector<BaseElem> prod(2 * r - 1, base_.zero());
    for (std::size_t i = 0; i < r; ++i) {
      if (base_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (base_.is_zero(b[j])) continue;
        prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
      }
    }
    // Reduce top-down using x^r = -(g_0 + ... + g_{r-1} x^{r-1}).
    for (std::size_t i = 2 * r - 1; i-- > r;) {
      if (base_.is_zero(prod[i])) continue;
      const BaseElem t = prod[i];
      for (std::size_t j = 0; j < r; ++j) {
        prod[i - r + j] = base_.sub(prod[i - r + j], base_.mul(t, modulus_[j]));
      }
    }
    prod.resize(r);
    return prod;
  }

  Elem square(const Elem& a) const { return mul(a, a); }

  Elem inv(const Elem& a) const {
    Poly<Base> r0 = modulus_;
    Poly<Base> r1 = a;
    poly_trim(base_, r1);
    if (r1.empty()) throw InputError("inverse of zero in extension field");
    Poly<Base> s0;
    Poly<Base> s1{base_.one()};
    while (r1.size() > 1) {
      auto [quot, rem] = poly_divmod(base_, r0, r1);
      r0 = std::move(r1);
      r1 = std::move(rem);
      Poly<Base> next = poly_sub(base_, s0, poly_mul(base_, quot, s1));
      s0 = std::move(s1);
      s1 = std::move(next);
    }
    if (r1.empty()) throw InternalError("extension modulus is not irreducible");
    const Poly<Base> result = poly_scale(base_, base_.inv(r1[0]), s1);
    return pad(poly_mod(base_, result, modulus_));
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  /// a^(q^times), q the characteristic.
  Elem frobenius(const Elem& a, std::uint64_t times = 1) const {
    Elem cur = a;
    for (std::uint64_t t = 0; t < times % dimension(); ++t) {
      Elem next = zero();
      for (std::size_t j = 0; j < degree(); ++j) {
        const BaseElem c = base_.frobenius(cur[j]);
        if (base_.is_zero(c)) continue;
        for (std::size_t i = 0; i < degree(); ++i) {
          next[i] = base_.add(next[i], base_.mul(c, frobenius_images_[j][i]));
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  void flatten_into(const Elem& a, std::vector<Coeff>& out) const {
    for (const auto& c : a) base_.flatten_into(c, out);
  }
  std::vector<Coeff> flatten(const Elem& a) const {
    std::vector<Coeff> out;
    out.reserve(dimension());
    flatten_into(a, out);
    return out;
  }
  Elem unflatten(std::span<const Coeff> coords) const {
    if (coords.size() != dimension()) throw InputError("wrong number of coordinates for extension element");
    const std::size_t step = base_.dimension();
    Elem e;
    e.reserve(degree());
    for (std::size_t i = 0; i < degree(); ++i) e.push_back(base_.unflatten(coords.subspan(i * step, step)));
    return e;
  }

  /// Element whose flattened coordinates are the base-q digits of index.
  Elem element_from_index(BigInt index) const {
    std::vector<Coeff> coords(dimension(), 0);
    for (auto& c : coords) {
      c = static_cast<Coeff>(index % characteristic());
      index /= characteristic();
    }
    return unflatten(coords);
  }

  template <class Rng>
  Elem random(Rng& rng) const {
    Elem e;
    e.reserve(degree());
    for (std::size_t i = 0; i < degree(); ++i) e.push_back(base_.random(rng));
    return e;
  }

 private:
  Elem pad(Poly<Base> p) const {
    p.resize(degree(), base_.zero());
    return p;
  }

  Base base_;
  std::vector<BaseElem> modulus_;
  std::vector<Elem> frobenius_images_;
};

using GFq = PrimeField;
using GFqk = ExtensionField<PrimeField>;
using GFqn = ExtensionField<GFqk>;

}  // namespace sidon::ff
