#include "sidon/attacks/structured.hpp"

#include <charconv>
#include <map>

#include <json.hpp>

#include "sidon/error.hpp"
#include "sidon/ff/irreducible.hpp"
#include "sidon/ff/poly_roots.hpp"

namespace sidon::attacks {

using crypto::GFq;
using crypto::GFqk;
using crypto::GFqn;

namespace {

using Json = nlohmann::ordered_json;

std::string name(const char* prefix, std::initializer_list<std::size_t> indices) {
  std::string out = prefix;
  for (auto i : indices) out += "_" + std::to_string(i + 1);
  return out;
}

bool same_tower(const ff::TowerContext& a, const ff::TowerContext& b) {
  return a.q() == b.q() && a.modulus_k() == b.modulus_k() && a.relative_modulus() == b.relative_modulus();
}

// Variable layout of the quartic system.
struct QuarticLayout {
  std::size_t k;
  std::size_t n;
  std::uint32_t u(std::size_t i, std::size_t j) const { return static_cast<std::uint32_t>(i * k + j); }
  std::uint32_t g(std::size_t l) const { return static_cast<std::uint32_t>(k * k + l); }
  std::uint32_t b(std::size_t i, std::size_t j) const { return static_cast<std::uint32_t>(k * k + n + i * n + j); }
  std::size_t size() const { return k * k + n + n * n; }
};

// Variable layout of the quadratic-reduced system.
struct QuadraticLayout {
  std::size_t k;
  std::size_t n;
  std::uint32_t w(std::size_t s, std::size_t t, std::size_t l, std::size_t r) const {
    return static_cast<std::uint32_t>(((s * k + t) * k + l) * k + r);
  }
  std::uint32_t h(std::size_t i, std::size_t j) const { return static_cast<std::uint32_t>(k * k * k * k + i * n + j); }
  std::uint32_t g(std::size_t l) const { return static_cast<std::uint32_t>(k * k * k * k + n * n + l); }
  std::uint32_t b(std::size_t i, std::size_t j) const {
    return static_cast<std::uint32_t>(k * k * k * k + n * n + n + i * n + j);
  }
};

std::vector<std::string> quartic_names(const QuarticLayout& lay) {
  std::vector<std::string> names(lay.size());
  for (std::size_t i = 0; i < lay.k; ++i) {
    for (std::size_t j = 0; j < lay.k; ++j) names[lay.u(i, j)] = name("u", {i, j});
  }
  for (std::size_t l = 0; l < lay.n; ++l) names[lay.g(l)] = name("g", {l});
  for (std::size_t i = 0; i < lay.n; ++i) {
    for (std::size_t j = 0; j < lay.n; ++j) names[lay.b(i, j)] = name("b", {i, j});
  }
  return names;
}

std::vector<std::string> quadratic_names(const QuadraticLayout& lay) {
  const std::size_t k = lay.k;
  const std::size_t n = lay.n;
  std::vector<std::string> names(k * k * k * k + 2 * n * n + n);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t r = 0; r < k; ++r) names[lay.w(s, t, l, r)] = name("w", {s, t, l, r});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      names[lay.h(i, j)] = name("h", {i, j});
      names[lay.b(i, j)] = name("b", {i, j});
    }
  }
  for (std::size_t l = 0; l < n; ++l) names[lay.g(l)] = name("g", {l});
  return names;
}

// u u -> w, g g -> h; b and lone g keep their meaning.
Monomial reduce_monomial(const Monomial& m, const QuarticLayout& from, const QuadraticLayout& to) {
  std::vector<std::uint32_t> us;
  std::vector<std::uint32_t> gs;
  Monomial out;
  for (const auto& [var, exp] : m) {
    for (std::uint32_t e = 0; e < exp; ++e) {
      if (var < from.k * from.k) {
        us.push_back(var);
      } else if (var < from.k * from.k + from.n) {
        gs.push_back(static_cast<std::uint32_t>(var - from.k * from.k));
      } else {
        const std::size_t rest = var - from.k * from.k - from.n;
        out = monomial_product(out, Monomial{{to.b(rest / from.n, rest % from.n), 1}});
      }
    }
  }
  if (us.size() == 2) {
    const auto lo = std::min(us[0], us[1]);
    const auto hi = std::max(us[0], us[1]);
    out = monomial_product(out, Monomial{{to.w(lo / from.k, lo % from.k, hi / from.k, hi % from.k), 1}});
  } else if (!us.empty()) {
    throw InternalError("structured term without a u-pair");
  }
  if (gs.size() == 2) {
    out = monomial_product(out, Monomial{{to.h(std::min(gs[0], gs[1]), std::max(gs[0], gs[1])), 1}});
  } else if (gs.size() == 1) {
    out = monomial_product(out, Monomial{{to.g(gs[0]), 1}});
  }
  return out;
}

std::vector<std::size_t> parse_indices(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    if (text.front() != '_') throw InputError("bad variable name");
    text.remove_prefix(1);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || v == 0) throw InputError("bad variable index");
    out.push_back(v - 1);
    text.remove_prefix(static_cast<std::size_t>(end - text.data()));
  }
  return out;
}

}  // namespace

ff::TowerContext random_representation(std::uint32_t q, std::size_t k, SplitMix64& rng) {
  const GFq fq(q);
  auto modulus_k = ff::random_irreducible(fq, k, rng);
  const GFqk fk(fq, modulus_k);
  const auto relative = ff::random_irreducible(fk, 2, rng);
  return ff::TowerContext(q, std::move(modulus_k), relative);
}

TowerIsomorphism::TowerIsomorphism(const ff::TowerContext& alice, const ff::TowerContext& eve, SplitMix64& rng)
    : eve_(&eve) {
  if (alice.q() != eve.q() || alice.k() != eve.k() || alice.r() != eve.r()) {
    throw InputError("towers have different shapes");
  }
  const GFqk& fk = eve.fk();
  ff::Poly<GFqk> lifted;
  for (Coeff c : alice.modulus_k()) lifted.push_back(fk.scalar(c));
  const auto rho = ff::find_root(fk, lifted, rng);
  if (!rho) throw InternalError("modulus has no root in an extension of the same degree");
  rho_powers_.push_back(fk.one());
  for (std::size_t i = 1; i < alice.k(); ++i) rho_powers_.push_back(fk.mul(rho_powers_.back(), *rho));

  ff::Poly<GFqn> relative;
  for (const auto& c : alice.relative_modulus()) relative.push_back(eve.embed(map_k(c)));
  const auto root = ff::find_root(eve.fn(), relative, rng);
  if (!root) throw InternalError("relative modulus has no root in an isomorphic field");
  gamma_ = *root;
}

GFqk::Elem TowerIsomorphism::map_k(const GFqk::Elem& x) const {
  const GFqk& fk = eve_->fk();
  auto out = fk.zero();
  for (std::size_t i = 0; i < x.size(); ++i) out = fk.add(out, fk.scale(x[i], rho_powers_[i]));
  return out;
}

GFqn::Elem TowerIsomorphism::map_n(const GFqn::Elem& x) const {
  const GFqn& fn = eve_->fn();
  auto out = fn.zero();
  auto power = fn.one();
  for (const auto& coefficient : x) {
    out = fn.add(out, fn.mul(eve_->embed(map_k(coefficient)), power));
    power = fn.mul(power, gamma_);
  }
  return out;
}

StructuredSystems structured_attack_emit(const crypto::PublicKey& pub, const ff::TowerContext& eve) {
  if (eve.q() != pub.q || eve.k() != pub.k || eve.n() != pub.n) {
    throw InputError("Eve's tower does not match the public key parameters");
  }
  const std::size_t k = pub.k;
  const std::size_t n = pub.n;
  const GFq fq(pub.q);
  const GFqk& fk = eve.fk();
  const GFqn& fn = eve.fn();
  const QuarticLayout lay{k, n};

  std::vector<GFqn::Elem> omega;
  std::vector<GFqn::Elem> omega_q;
  for (std::size_t j = 0; j < k; ++j) {
    auto w = fk.zero();
    w[j] = 1;
    omega.push_back(eve.embed(w));
    omega_q.push_back(eve.embed(fk.frobenius(w)));
  }
  std::vector<GFqn::Elem> delta;
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<Coeff> unit(n, 0);
    unit[l] = 1;
    delta.push_back(fn.unflatten(unit));
  }

  // nu'_s = sum_j u_{s,j} P_j with P_j = omega_j + sum_l g_l delta_l omega_j^q,
  // so each product expands over (j, j') into constant, g-linear and
  // g-quadratic parts with F_{q^n} coefficients.
  StructuredSystems out;
  out.quartic.q = out.quadratic.q = pub.q;
  out.quartic.k = out.quadratic.k = k;
  out.quartic.variables = quartic_names(lay);
  const QuadraticLayout qlay{k, n};
  out.quadratic.variables = quadratic_names(qlay);

  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t <= s; ++t) {
      std::map<Monomial, GFqn::Elem> acc;
      auto add = [&](const Monomial& m, const GFqn::Elem& c) {
        auto [it, inserted] = acc.try_emplace(m, c);
        if (!inserted) it->second = fn.add(it->second, c);
      };
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t jj = 0; jj < k; ++jj) {
          const Monomial uu = monomial_product(Monomial{{lay.u(s, j), 1}}, Monomial{{lay.u(t, jj), 1}});
          add(uu, fn.mul(omega[j], omega[jj]));
          const auto cross = fn.add(fn.mul(omega_q[j], omega[jj]), fn.mul(omega_q[jj], omega[j]));
          const auto both = fn.mul(omega_q[j], omega_q[jj]);
          for (std::size_t l = 0; l < n; ++l) {
            add(monomial_product(uu, Monomial{{lay.g(l), 1}}), fn.mul(delta[l], cross));
            for (std::size_t ll = 0; ll < n; ++ll) {
              add(monomial_product(uu, monomial_product(Monomial{{lay.g(l), 1}}, Monomial{{lay.g(ll), 1}})),
                  fn.mul(fn.mul(delta[l], delta[ll]), both));
            }
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Coeff m = pub.matrices[i](s, t);
        if (m == 0) continue;
        for (std::size_t j = 0; j < n; ++j) add(Monomial{{lay.b(i, j), 1}}, fn.scale(fn.base().scalar(fq.neg(m)), delta[j]));
      }

      std::vector<std::pair<Monomial, std::vector<Coeff>>> flat;
      flat.reserve(acc.size());
      for (const auto& [mono, coef] : acc) flat.emplace_back(mono, fn.flatten(coef));
      for (std::size_t d = 0; d < n; ++d) {
        SparsePolynomial quartic;
        SparsePolynomial quadratic;
        for (const auto& [mono, coords] : flat) {
          quartic.add_term(mono, coords[d], fq);
          quadratic.add_term(reduce_monomial(mono, lay, qlay), coords[d], fq);
        }
        out.quartic.equations.push_back(std::move(quartic));
        out.quadratic.equations.push_back(std::move(quadratic));
      }
    }
  }
  return out;
}

std::vector<Coeff> structured_ground_truth(const crypto::PrivateKey& priv, const PolynomialSystem& sys,
                                           const ff::TowerContext& eve, SplitMix64& rng) {
  const auto& alice = priv.ctx();
  const std::size_t k = priv.k();
  const std::size_t n = priv.n();
  const GFq& fq = alice.fq();

  // Coordinates of f(w_i), f(gamma) and f(beta_i) in Eve's bases, where
  // nu_i = w_i + w_i^q gamma.
  std::vector<std::vector<Coeff>> u(k);
  std::vector<Coeff> g;
  std::vector<std::vector<Coeff>> b(n);
  if (same_tower(alice, eve)) {
    for (std::size_t i = 0; i < k; ++i) u[i] = priv.a().column(i);
    g = alice.flatten(alice.gamma());
    for (std::size_t i = 0; i < n; ++i) b[i] = priv.e().column(i);
  } else {
    const TowerIsomorphism iso(alice, eve, rng);
    for (std::size_t i = 0; i < k; ++i) u[i] = iso.map_k(alice.fk().unflatten(priv.a().column(i)));
    g = eve.flatten(iso.map_n(alice.gamma()));
    const auto beta = priv.beta();
    for (std::size_t i = 0; i < n; ++i) b[i] = eve.flatten(iso.map_n(beta[i]));
  }

  std::vector<Coeff> values;
  values.reserve(sys.variables.size());
  for (const auto& var : sys.variables) {
    const auto sep = var.find('_');
    if (sep == std::string::npos) throw InputError("bad variable name '" + var + "'");
    const std::string prefix = var.substr(0, sep);
    const auto idx = parse_indices(std::string_view(var).substr(sep));
    auto check = [&](std::size_t count, std::size_t bound) {
      if (idx.size() != count) throw InputError("bad variable name '" + var + "'");
      for (auto i : idx) {
        if (i >= bound) throw InputError("variable index out of range in '" + var + "'");
      }
    };
    if (prefix == "u") {
      check(2, k);
      values.push_back(u[idx[0]][idx[1]]);
    } else if (prefix == "g") {
      check(1, n);
      values.push_back(g[idx[0]]);
    } else if (prefix == "b") {
      check(2, n);
      values.push_back(b[idx[0]][idx[1]]);
    } else if (prefix == "w") {
      check(4, k);
      values.push_back(fq.mul(u[idx[0]][idx[1]], u[idx[2]][idx[3]]));
    } else if (prefix == "h") {
      check(2, n);
      values.push_back(fq.mul(g[idx[0]], g[idx[1]]));
    } else {
      throw InputError("unknown variable family in '" + var + "'");
    }
  }
  return values;
}

std::size_t count_nonzero_residuals(const PolynomialSystem& sys, const std::vector<Coeff>& values) {
  const GFq f(sys.q);
  std::size_t bad = 0;
  for (const auto& eq : sys.equations) {
    if (eq.evaluate(f, values) != 0) ++bad;
  }
  return bad;
}

bool structured_attack_verify(const crypto::PrivateKey& priv, const PolynomialSystem& sys) {
  SplitMix64 unused(0);
  return structured_attack_verify(priv, sys, priv.ctx(), unused);
}

bool structured_attack_verify(const crypto::PrivateKey& priv, const PolynomialSystem& sys, const ff::TowerContext& eve,
                              SplitMix64& rng) {
  if (sys.q != priv.q() || sys.k != priv.k()) return false;
  return count_nonzero_residuals(sys, structured_ground_truth(priv, sys, eve, rng)) == 0;
}

StructuredReport structured_report(const crypto::PrivateKey& priv, const crypto::PublicKey& pub) {
  const auto systems = structured_attack_emit(pub, priv.ctx());
  StructuredReport r;
  r.k = pub.k;
  r.quartic_equations = systems.quartic.equations.size();
  r.quartic_variables = systems.quartic.variables.size();
  r.quartic_degree = systems.quartic.degree();
  r.quadratic_equations = systems.quadratic.equations.size();
  r.quadratic_variables = systems.quadratic.variables.size();
  r.quadratic_degree = systems.quadratic.degree();
  r.quartic_verified = structured_attack_verify(priv, systems.quartic);
  r.quadratic_verified = structured_attack_verify(priv, systems.quadratic);

  SplitMix64 unused(0);
  auto values = structured_ground_truth(priv, systems.quartic, priv.ctx(), unused);
  const std::size_t b11 = systems.quartic.index_of("b_1_1");
  values[b11] = priv.ctx().fq().add(values[b11], 1);
  r.perturbed_nonzero_residuals = count_nonzero_residuals(systems.quartic, values);
  return r;
}

std::string to_json(const StructuredReport& r) {
  const std::size_t k = r.k;
  Json doc;
  doc["attack"] = "structured";
  doc["k"] = k;
  doc["quartic"] = {{"equations", r.quartic_equations}, {"variables", r.quartic_variables}, {"degree", r.quartic_degree}};
  doc["quadratic"] = {
      {"equations", r.quadratic_equations}, {"variables", r.quadratic_variables}, {"degree", r.quadratic_degree}};
  doc["perturbed_nonzero_residuals"] = r.perturbed_nonzero_residuals;
  doc["bounds"] = {{"equations", k * k * (k + 1)},
                   {"variables", 5 * k * k + 2 * k},
                   {"quadratic_variables", k * k * k * k + 8 * k * k + 2 * k}};
  doc["checks"] = {
      {"equation_count", r.quartic_equations == k * k * (k + 1) ? "pass" : "fail"},
      {"variable_count", r.quartic_variables == 5 * k * k + 2 * k ? "pass" : "fail"},
      {"quadratic_variable_count", r.quadratic_variables == k * k * k * k + 8 * k * k + 2 * k ? "pass" : "fail"},
      {"degree_at_most_4", r.quartic_degree <= 4 ? "pass" : "fail"},
      {"quadratic_degree_at_most_2", r.quadratic_degree <= 2 ? "pass" : "fail"},
      {"ground_truth_residuals_zero", r.quartic_verified ? "pass" : "fail"},
      {"quadratic_ground_truth_residuals_zero", r.quadratic_verified ? "pass" : "fail"},
      {"perturbation_detected", r.perturbed_nonzero_residuals > 0 ? "pass" : "fail"},
  };
  return doc.dump(2) + "\n";
}

}  // namespace sidon::attacks
