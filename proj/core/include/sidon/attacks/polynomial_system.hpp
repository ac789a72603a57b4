#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sidon/error.hpp"
#include "sidon/ff/prime_field.hpp"

// Plain-text polynomial systems over F_q, one polynomial per line:
//
//   # q=3 k=3 vars=51 eqs=36
//   # vars: u_1_1 u_1_2 ... g_1 ... b_6_6
//   2*u_1_1*u_2_1*g_4 + 1*b_3_2 + 2 = 0
//
// Coefficients are decimal in [1, q); a monomial is a '*'-separated product
// of variable names, each optionally raised with '^e'. The zero polynomial is
// written "0 = 0". Lines starting with '#' other than the two headers are
// comments.

namespace sidon::attacks {

using ff::Coeff;

/// Sorted (variable index, exponent) pairs; exponents are >= 1.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
std::uint32_t monomial_degree(const Monomial& m);

/// Polynomial with F_q coefficients; no zero coefficients are stored.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;

  void add_term(const Monomial& m, Coeff c, const ff::PrimeField& f);
  const std::map<Monomial, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const;

  /// Value at an assignment of the variables into any field over F_q.
  template <class F>
  typename F::Elem evaluate(const F& f, const std::vector<typename F::Elem>& values) const {
    auto acc = f.zero();
    for (const auto& [mono, coef] : terms_) {
      auto term = f.scalar(coef);
      for (const auto& [var, exp] : mono) {
        if (var >= values.size()) throw InputError("assignment is missing a variable");
        for (std::uint32_t e = 0; e < exp; ++e) term = f.mul(term, values[var]);
      }
      acc = f.add(acc, term);
    }
    return acc;
  }

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  std::map<Monomial, Coeff> terms_;
};

struct PolynomialSystem {
  std::uint32_t q = 0;
  std::size_t k = 0;
  std::vector<std::string> variables;
  std::vector<SparsePolynomial> equations;

  std::uint32_t degree() const;
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const PolynomialSystem&, const PolynomialSystem&) = default;
};

std::string to_text(const PolynomialSystem& sys);
/// Throws InputError on malformed text.
PolynomialSystem parse_system(std::string_view text);

}  // namespace sidon::attacks
