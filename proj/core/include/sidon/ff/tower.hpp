#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sidon/ff/extension_field.hpp"
#include "sidon/linalg/matrix.hpp"

namespace sidon::ff {

/// The chain F_q < F_{q^k} < F_{q^{rk}}.
///
/// F_{q^k} = F_q[y]/(modulus_k) with basis omega = (1, y, ..., y^{k-1});
/// the top field is F_{q^k}[x]/(relative_modulus) with gamma the class of x.
/// For the cryptosystem r = 2 and relative_modulus = x^2 + b x + c, so the
/// flattening basis of F_{q^n} is (omega_1..omega_k, omega_1 gamma..omega_k gamma).
class TowerContext {
 public:
  /// Validates irreducibility of both moduli; throws ParameterError otherwise.
  TowerContext(std::uint32_t q, std::vector<Coeff> modulus_k, std::vector<GFqk::Elem> relative_modulus);

  /// Convenience for r = 2: relative modulus x^2 + b x + c.
  static TowerContext quadratic(std::uint32_t q, std::vector<Coeff> modulus_k, GFqk::Elem b, GFqk::Elem c);

  std::uint32_t q() const { return fq_.characteristic(); }
  std::size_t k() const { return fk_.degree(); }
  std::size_t r() const { return fn_.degree(); }
  std::size_t n() const { return fn_.dimension(); }

  const GFq& fq() const { return fq_; }
  const GFqk& fk() const { return fk_; }
  const GFqn& fn() const { return fn_; }

  const std::vector<Coeff>& modulus_k() const { return fk_.modulus(); }
  const std::vector<GFqk::Elem>& relative_modulus() const { return fn_.modulus(); }

  /// Coefficients of x^2 + b x + c (only meaningful when r = 2).
  const GFqk::Elem& b() const;
  const GFqk::Elem& c() const;

  GFqn::Elem gamma() const { return fn_.generator(); }
  GFqn::Elem embed(const GFqk::Elem& u) const { return fn_.embed(u); }

  std::vector<Coeff> flatten(const GFqn::Elem& e) const { return fn_.flatten(e); }
  GFqn::Elem unflatten(std::span<const Coeff> coords) const { return fn_.unflatten(coords); }

 private:
  GFq fq_;
  GFqk fk_;
  GFqn fn_;
};

struct LinearizedT {
  linalg::Matrix forward;  // column j = omega-coordinates of T(omega_j)
  linalg::Matrix inverse;
};

/// Matrix of T(x) = x - c x^q on F_{q^k} in the basis omega, with inverse.
/// Throws ParameterError when c is a (q-1)-th power (T singular).
LinearizedT linearized_T(const GFqk& fk, const GFqk::Elem& c);
LinearizedT linearized_T(const TowerContext& ctx);

}  // namespace sidon::ff
