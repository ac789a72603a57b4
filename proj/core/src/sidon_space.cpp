#include "sidon/space/sidon_space.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "sidon/error.hpp"
#include "sidon/ff/irreducible.hpp"
#include "sidon/ff/roots.hpp"
#include "sidon/linalg/matrix.hpp"

namespace sidon::space {

namespace {

std::vector<GFqn::Elem> canonical_basis(const ff::TowerContext& ctx) {
  std::vector<GFqn::Elem> basis;
  basis.reserve(ctx.k());
  const auto& fk = ctx.fk();
  const auto& fn = ctx.fn();
  const auto gamma = ctx.gamma();
  for (std::size_t i = 0; i < ctx.k(); ++i) {
    GFqk::Elem omega = fk.zero();
    omega[i] = fk.base().one();
    basis.push_back(fn.add(ctx.embed(omega), fn.mul(ctx.embed(fk.frobenius(omega)), gamma)));
  }
  return basis;
}

// Draws a nonzero element outside W_{q-1}. About (q-2)/(q-1) of the draws
// succeed, so the cap is only hit on a broken field.
GFqk::Elem sample_c(const GFqk& fk, SplitMix64& rng) {
  for (int trial = 0; trial < 4096; ++trial) {
    auto c = fk.random(rng);
    if (!fk.is_zero(c) && !ff::is_qm1_power(fk, c)) return c;
  }
  throw InternalError("no c outside W_{q-1} after 4096 draws");
}

}  // namespace

SidonSpace::SidonSpace(ff::TowerContext ctx) : ctx_(std::move(ctx)), basis0_(canonical_basis(ctx_)) {
  if (ctx_.r() == 2) t_ = ff::linearized_T(ctx_);
}

SidonSpace SidonSpace::from_parameters(std::uint32_t q, std::vector<Coeff> modulus_k, GFqk::Elem b, GFqk::Elem c) {
  if (modulus_k.size() < 4) throw ParameterError("k must be >= 3");
  return SidonSpace(ff::TowerContext::quadratic(q, std::move(modulus_k), std::move(b), std::move(c)));
}

SidonSpace construct_sidon_2k(std::uint32_t q, std::size_t k, SplitMix64& rng) {
  if (k < 3) throw ParameterError("k must be >= 3");
  const GFq fq(q);
  auto modulus_k = ff::random_irreducible(fq, k, rng);
  const GFqk fk(fq, modulus_k);
  const auto c = sample_c(fk, rng);
  // x^2 + bx + c is irreducible for roughly half of all b.
  for (int trial = 0; trial < 4096; ++trial) {
    auto b = fk.random(rng);
    if (ff::is_irreducible(fk, ff::Poly<GFqk>{c, b, fk.one()})) {
      return SidonSpace(ff::TowerContext::quadratic(q, std::move(modulus_k), std::move(b), c));
    }
  }
  throw InternalError("no irreducible x^2 + bx + c after 4096 draws");
}

SidonSpace construct_sidon_rk(std::uint32_t q, std::size_t k, std::size_t r, SplitMix64& rng) {
  if (r < 3) throw ParameterError("Construction 1 needs r >= 3");
  if (k < 1) throw ParameterError("k must be >= 1");
  const GFq fq(q);
  auto modulus_k = ff::random_irreducible(fq, k, rng);
  const GFqk fk(fq, modulus_k);
  auto relative = ff::random_irreducible(fk, r, rng);
  return SidonSpace(ff::TowerContext(q, std::move(modulus_k), std::move(relative)));
}

GFqn::Elem sidon_element(const SidonSpace& v, const GFqk::Elem& u) {
  const auto& ctx = v.ctx();
  return ctx.fn().add(ctx.embed(u), ctx.fn().mul(ctx.embed(ctx.fk().frobenius(u)), ctx.gamma()));
}

Factorization factor_product(const SidonSpace& v, const GFqn::Elem& pi) {
  const auto& ctx = v.ctx();
  if (!v.linearized_t()) throw InputError("factor_product needs the quadratic construction");
  const auto& fk = ctx.fk();
  const auto& fq = ctx.fq();
  // pi = q0 + q1 gamma with q0 = uv - c (uv)^q and q1 = uv^q + u^q v - b (uv)^q.
  const GFqk::Elem& q0 = pi[0];
  const GFqk::Elem& q1 = pi[1];
  const GFqk::Elem uv = linalg::apply(fq, v.linearized_t()->inverse, std::span<const Coeff>(q0));
  if (fk.is_zero(uv)) throw FactorizationError("product has no uv component");
  const GFqk::Elem uv_q = fk.frobenius(uv);
  const GFqk::Elem cross = fk.add(q1, fk.mul(ctx.b(), uv_q));

  // (uv)^q x^2 + (uv^q + u^q v) x + uv has roots -1/u^{q-1} and -1/v^{q-1}.
  const GFqk::Elem lead_inv = fk.inv(uv_q);
  const auto roots = ff::solve_quadratic(fk, fk.mul(cross, lead_inv), fk.mul(uv, lead_inv));
  if (roots.roots.empty()) throw FactorizationError("quadratic has no roots in F_{q^k}");

  auto recover = [&](const GFqk::Elem& rho) {
    if (fk.is_zero(rho)) throw FactorizationError("zero root");
    const auto root = ff::rth_root(fk, fk.neg(fk.inv(rho)), ctx.q() - 1);
    if (!root) throw FactorizationError("root is not of the form -1/u^(q-1)");
    GFqk::Elem u = *root;
    normalize_leading(fq, u);
    return u;
  };

  Factorization out;
  out.u = recover(roots.roots.front());
  out.v = roots.roots.size() == 2 ? recover(roots.roots.back()) : out.u;
  out.repeated = roots.roots.size() == 1;

  // The recovered pair must reproduce pi up to a nonzero scalar.
  const auto& fn = ctx.fn();
  const auto product = fn.flatten(fn.mul(sidon_element(v, out.u), sidon_element(v, out.v)));
  const auto target = fn.flatten(pi);
  std::size_t lead = 0;
  while (lead < target.size() && target[lead] == 0) ++lead;
  if (lead == target.size()) throw FactorizationError("zero product");
  out.lambda = fq.div(product[lead], target[lead]);
  if (out.lambda == 0) throw FactorizationError("inconsistent factorization");
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (product[i] != fq.mul(out.lambda, target[i])) throw FactorizationError("inconsistent factorization");
  }
  return out;
}

bool verify_sidon_bruteforce(const GFqn& field, const std::vector<GFqn::Elem>& basis) {
  const std::uint64_t q = field.characteristic();
  const std::size_t k = basis.size();
  if (ipow(q, k) > (1U << 14)) throw CapacityError("verify_sidon_bruteforce: q^k exceeds 2^14");
  if (ipow(q, field.dimension()) >= BigInt(1) << 63) throw CapacityError("verify_sidon_bruteforce: ambient field too large");
  const GFq& fq = field.base().base();
  if (k == 0) return true;

  // One representative per projective point: coefficient vectors whose first
  // nonzero entry is 1.
  std::vector<GFqn::Elem> points;
  const std::uint64_t total = static_cast<std::uint64_t>(ipow(q, k));
  for (std::uint64_t index = 1; index < total; ++index) {
    std::vector<Coeff> coeffs(k);
    std::uint64_t rest = index;
    for (auto& c : coeffs) {
      c = static_cast<Coeff>(rest % q);
      rest /= q;
    }
    if (*std::find_if(coeffs.begin(), coeffs.end(), [](Coeff c) { return c != 0; }) != 1) continue;
    GFqn::Elem e = field.zero();
    for (std::size_t i = 0; i < k; ++i) {
      if (coeffs[i] != 0) e = field.add(e, field.scale(field.base().scalar(coeffs[i]), basis[i]));
    }
    if (field.is_zero(e)) return false;  // basis is dependent
    points.push_back(std::move(e));
  }

  // Products of projective points, themselves normalized projectively, must
  // all be distinct.
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      auto flat = field.flatten(field.mul(points[i], points[j]));
      normalize_leading(fq, flat);
      std::uint64_t key = 0;
      for (auto it = flat.rbegin(); it != flat.rend(); ++it) key = key * q + *it;
      if (!seen.insert(key).second) return false;
    }
  }
  return true;
}

bool verify_sidon_bruteforce(const SidonSpace& v) { return verify_sidon_bruteforce(v.ctx().fn(), v.basis0()); }

std::size_t dim_v_squared(const GFqn& field, const std::vector<GFqn::Elem>& basis) {
  linalg::Matrix products(0, field.dimension(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) products.append_row(field.flatten(field.mul(basis[i], basis[j])));
  }
  return linalg::rank(field.base().base(), products);
}

std::size_t dim_v_squared(const SidonSpace& v) { return dim_v_squared(v.ctx().fn(), v.basis0()); }

}  // namespace sidon::space
