#include "sidon/attacks/kernel.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "sidon/error.hpp"

namespace sidon::attacks {

namespace {

using Json = nlohmann::ordered_json;

double q_power_rate(std::uint32_t q, std::size_t n) { return std::pow(static_cast<double>(q), -static_cast<double>(n)); }

// Columns of the systematic kernel matrix: every index except the row.
std::vector<std::size_t> free_columns(std::size_t k, std::size_t row_position) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < k; ++j) {
    if (j != row_position) cols.push_back(j);
  }
  return cols;
}

}  // namespace

bool KernelExperiment::within(double width) const {
  return std::abs(empirical_rate - theoretical_rate) <= width * sigma;
}

bool in_secret_kernel(const PrivateKey& priv, const std::vector<GFqn::Elem>& v) {
  const GFqn& field = priv.ctx().fn();
  if (v.size() != priv.k()) throw InputError("kernel candidate must have k entries");
  auto acc = field.zero();
  for (std::size_t j = 0; j < v.size(); ++j) acc = field.add(acc, field.mul(priv.nu()[j], v[j]));
  return field.is_zero(acc);
}

KernelExperiment kernel_attack_experiment(const PrivateKey& priv, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("trials must be >= 1");
  const GFqn& field = priv.ctx().fn();
  KernelExperiment e;
  e.trials = trials;
  std::vector<GFqn::Elem> v(priv.k());
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    for (auto& x : v) x = field.random(rng);
    if (in_secret_kernel(priv, v)) ++e.hits;
  }
  e.empirical_rate = static_cast<double>(e.hits) / static_cast<double>(trials);
  e.theoretical_rate = q_power_rate(priv.q(), priv.n());
  e.sigma = std::sqrt(e.theoretical_rate * (1.0 - e.theoretical_rate) / static_cast<double>(trials));
  return e;
}

std::string to_json(const KernelExperiment& e) {
  Json doc;
  doc["attack"] = "kernel";
  doc["trials"] = e.trials;
  doc["hits"] = e.hits;
  doc["empirical_rate"] = e.empirical_rate;
  doc["theoretical_rate"] = e.theoretical_rate;
  doc["sigma"] = e.sigma;
  doc["checks"] = {{"within_5_sigma", e.within(5.0) ? "pass" : "fail"}};
  if (e.base_field_probe) doc["checks"]["base_field_probe"] = *e.base_field_probe ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

bool base_field_kernel_vector_has_no_zero_entry(const PrivateKey& priv, const Vector& v) {
  if (v.size() != priv.k()) throw InputError("probe vector must have k entries");
  if (std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; })) throw InputError("probe vector must be nonzero");
  const GFqn& field = priv.ctx().fn();
  auto combo = field.zero();
  for (std::size_t j = 0; j < v.size(); ++j) combo = field.add(combo, field.scale(field.base().scalar(v[j]), priv.nu()[j]));
  for (const auto& nu_i : priv.nu()) {
    if (field.is_zero(field.mul(nu_i, combo))) return false;
  }
  return true;
}

bool base_field_kernel_probe(const PrivateKey& priv, std::uint64_t trials, std::uint64_t seed) {
  const GFq& fq = priv.ctx().fq();
  Vector v(priv.k());
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    do {
      for (auto& x : v) x = fq.random(rng);
    } while (std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; }));
    if (!base_field_kernel_vector_has_no_zero_entry(priv, v)) return false;
  }
  return true;
}

PolynomialSystem build_ks_system(const PublicKey& pub, std::size_t row_position) {
  if (row_position >= pub.k) throw InputError("row position must be in [1, k]");
  const GFq f(pub.q);
  PolynomialSystem sys;
  sys.q = pub.q;
  sys.k = pub.k;
  for (std::size_t i = 0; i < pub.n; ++i) sys.variables.push_back("y_" + std::to_string(i + 1));
  for (std::size_t c = 0; c + 1 < pub.k; ++c) sys.variables.push_back("z_" + std::to_string(c + 1));

  const auto cols = free_columns(pub.k, row_position);
  for (std::size_t r = 0; r < pub.k; ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      SparsePolynomial eq;
      const auto z = static_cast<std::uint32_t>(pub.n + c);
      for (std::size_t i = 0; i < pub.n; ++i) {
        const auto y = static_cast<std::uint32_t>(i);
        eq.add_term(Monomial{{y, 1}}, pub.matrices[i](r, cols[c]), f);
        eq.add_term(Monomial{{y, 1}, {z, 1}}, pub.matrices[i](r, row_position), f);
      }
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

std::vector<GFqn::Elem> ks_ground_truth(const PrivateKey& priv, std::size_t row_position) {
  if (row_position >= priv.k()) throw InputError("row position must be in [1, k]");
  const GFqn& field = priv.ctx().fn();
  std::vector<GFqn::Elem> values = priv.beta();
  const auto& nu = priv.nu();
  // nu_{j_c} + z_c nu_p = 0; nu_p != 0 because nu is a basis, so the
  // systematic form exists at every position.
  const auto inv_p = field.inv(nu[row_position]);
  for (std::size_t j : free_columns(priv.k(), row_position)) values.push_back(field.neg(field.mul(nu[j], inv_p)));
  return values;
}

bool ks_verify(const PrivateKey& priv, const PolynomialSystem& sys, const std::vector<GFqn::Elem>& values) {
  const GFqn& field = priv.ctx().fn();
  for (const auto& eq : sys.equations) {
    if (!field.is_zero(eq.evaluate(field, values))) return false;
  }
  return true;
}

KsReport ks_report(const PrivateKey& priv, const PublicKey& pub, std::size_t row_position, std::uint64_t trials,
                   std::uint64_t seed) {
  const PolynomialSystem sys = build_ks_system(pub, row_position);
  const auto truth = ks_ground_truth(priv, row_position);
  KsReport r;
  r.equations = sys.equations.size();
  r.variables = sys.variables.size();
  r.verified = ks_verify(priv, sys, truth);
  r.guess_trials = trials;
  r.theoretical_rate = q_power_rate(pub.q, pub.n);
  const GFqn& field = priv.ctx().fn();
  const auto& z1 = truth[pub.n];
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    if (field.random(rng) == z1) ++r.guess_hits;
  }
  return r;
}

std::string to_json(const KsReport& r) {
  Json doc;
  doc["attack"] = "ks";
  doc["equations"] = r.equations;
  doc["variables"] = r.variables;
  doc["guess_trials"] = r.guess_trials;
  doc["guess_hits"] = r.guess_hits;
  doc["empirical_rate"] = r.guess_trials ? static_cast<double>(r.guess_hits) / static_cast<double>(r.guess_trials) : 0.0;
  doc["theoretical_rate"] = r.theoretical_rate;
  doc["checks"] = {{"ground_truth_residuals_zero", r.verified ? "pass" : "fail"}};
  return doc.dump(2) + "\n";
}

}  // namespace sidon::attacks
