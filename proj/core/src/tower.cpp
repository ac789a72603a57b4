#include "sidon/ff/tower.hpp"

#include <utility>

#include "sidon/error.hpp"
#include "sidon/ff/irreducible.hpp"
#include "sidon/ff/roots.hpp"

namespace sidon::ff {

namespace {

GFqk make_fk(std::uint32_t q, std::vector<Coeff> modulus_k) {
  const GFq fq(q);
  for (auto& coefficient : modulus_k) coefficient = fq.scalar(coefficient);
  poly_trim(fq, modulus_k);
  if (modulus_k.size() < 2 || !poly_is_monic(fq, modulus_k) || !is_irreducible(fq, modulus_k)) {
    throw ParameterError("modulusK must be a monic irreducible polynomial of degree >= 1 over F_q");
  }
  return GFqk(fq, std::move(modulus_k));
}

GFqn make_fn(const GFqk& fk, std::vector<GFqk::Elem> relative) {
  for (const auto& coefficient : relative) {
    if (coefficient.size() != fk.degree()) throw InputError("relative modulus coefficient has the wrong length");
  }
  poly_trim(fk, relative);
  if (relative.size() < 2 || !poly_is_monic(fk, relative) || !is_irreducible(fk, relative)) {
    throw ParameterError("relative modulus must be monic and irreducible over F_{q^k}");
  }
  return GFqn(fk, std::move(relative));
}

}  // namespace

TowerContext::TowerContext(std::uint32_t q, std::vector<Coeff> modulus_k, std::vector<GFqk::Elem> relative_modulus)
    : fq_(q), fk_(make_fk(q, std::move(modulus_k))), fn_(make_fn(fk_, std::move(relative_modulus))) {}

TowerContext TowerContext::quadratic(std::uint32_t q, std::vector<Coeff> modulus_k, GFqk::Elem b, GFqk::Elem c) {
  const GFqk fk = make_fk(q, modulus_k);
  return TowerContext(q, std::move(modulus_k), {std::move(c), std::move(b), fk.one()});
}

const GFqk::Elem& TowerContext::b() const {
  if (r() != 2) throw InputError("b is only defined for a quadratic top extension");
  return fn_.modulus()[1];
}

const GFqk::Elem& TowerContext::c() const {
  if (r() != 2) throw InputError("c is only defined for a quadratic top extension");
  return fn_.modulus()[0];
}

LinearizedT linearized_T(const GFqk& fk, const GFqk::Elem& c) {
  if (fk.is_zero(c) || is_qm1_power(fk, c)) {
    throw ParameterError("c must lie outside W_{q-1} for T(x) = x - c x^q to be invertible");
  }
  const std::size_t k = fk.degree();
  const GFq& fq = fk.base();
  linalg::Matrix forward(k, k, fq.zero());
  for (std::size_t j = 0; j < k; ++j) {
    GFqk::Elem omega = fk.zero();
    omega[j] = fq.one();
    const GFqk::Elem image = fk.sub(omega, fk.mul(c, fk.frobenius(omega)));
    for (std::size_t i = 0; i < k; ++i) forward(i, j) = image[i];
  }
  auto inverse = linalg::inverse(fq, forward);
  if (!inverse) throw InternalError("T matrix is singular although c is outside W_{q-1}");
  return {std::move(forward), std::move(*inverse)};
}

LinearizedT linearized_T(const TowerContext& ctx) { return linearized_T(ctx.fk(), ctx.c()); }

}  // namespace sidon::ff
