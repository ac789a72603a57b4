#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sidon/attacks/minors.hpp"
#include "sidon/attacks/polynomial_system.hpp"

namespace sidon::attacks {

struct KernelExperiment {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double empirical_rate = 0.0;
  double theoretical_rate = 0.0;  // q^-n
  double sigma = 0.0;             // binomial standard deviation of the rate
  std::optional<bool> base_field_probe;

  /// |empirical - theoretical| <= width * sigma.
  bool within(double width) const;
};

/// v in F_{q^n}^k lies in K = ker(sum beta_i M^(i)) = ker(nu^T nu) iff
/// nu . v = 0.
bool in_secret_kernel(const PrivateKey& priv, const std::vector<GFqn::Elem>& v);

/// Uniform v in F_{q^n}^k; trial t draws from stream (seed, t).
KernelExperiment kernel_attack_experiment(const PrivateKey& priv, std::uint64_t trials, std::uint64_t seed);
std::string to_json(const KernelExperiment& e);

/// Every entry nu_i (sum_j v_j nu_j) of M(nu) v^T is nonzero for v in F_q^k \ {0}.
bool base_field_kernel_vector_has_no_zero_entry(const PrivateKey& priv, const Vector& v);

/// Random nonzero v in F_q^k per trial; true iff every probe confirms.
bool base_field_kernel_probe(const PrivateKey& priv, std::uint64_t trials, std::uint64_t seed);

/// Kipnis-Shamir system (sum_i y_i M^(i)) K = 0 with K the k x (k-1) matrix
/// whose rows are unit vectors except row `row_position` (0-based), which
/// holds z_1..z_{k-1}. Variables y_1..y_n, z_1..z_{k-1}; the solution lives
/// in F_{q^n}, the coefficients in F_q.
PolynomialSystem build_ks_system(const PublicKey& pub, std::size_t row_position);

/// Ground truth y = beta, z_c = -nu_{j_c} / nu_p, as F_{q^n} values.
std::vector<GFqn::Elem> ks_ground_truth(const PrivateKey& priv, std::size_t row_position);

/// True iff every equation vanishes at `values` over F_{q^n}.
bool ks_verify(const PrivateKey& priv, const PolynomialSystem& sys, const std::vector<GFqn::Elem>& values);

struct KsReport {
  std::size_t equations = 0;
  std::size_t variables = 0;
  bool verified = false;
  std::uint64_t guess_trials = 0;
  std::uint64_t guess_hits = 0;  // uniformly guessed z_1 equal to the true one
  double theoretical_rate = 0.0;
};

KsReport ks_report(const PrivateKey& priv, const PublicKey& pub, std::size_t row_position, std::uint64_t trials,
                   std::uint64_t seed);
std::string to_json(const KsReport& r);

}  // namespace sidon::attacks
