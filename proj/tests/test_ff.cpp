#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "sidon/error.hpp"
#include "sidon/ff/extension_field.hpp"
#include "sidon/ff/irreducible.hpp"
#include "sidon/ff/power.hpp"
#include "sidon/ff/roots.hpp"
#include "sidon/ff/tower.hpp"
#include "sidon/rng.hpp"

namespace sidon::ff {
namespace {

GFqk f9() { return GFqk(GFq(3), {1, 0, 1}); }           // y^2 + 1
GFqk f27() { return GFqk(GFq(3), {1, 2, 0, 1}); }       // y^3 + 2y + 1
GFqk f25() { return GFqk(GFq(5), {2, 0, 1}); }          // y^2 + 2 (2 is a non-square mod 5)

std::vector<GFqk::Elem> all_elements(const GFqk& f) {
  std::vector<GFqk::Elem> out;
  for (BigInt i = 0; i < f.order(); ++i) out.push_back(f.element_from_index(i));
  return out;
}

TEST(PrimeField, RejectsBadModuli) {
  EXPECT_THROW(GFq(2), ParameterError);
  EXPECT_THROW(GFq(9), ParameterError);
  EXPECT_THROW(GFq(1), ParameterError);
  EXPECT_NO_THROW(GFq(2147483647U));
}

TEST(PrimeField, InverseRoundTrip) {
  const GFq f(541);
  for (Coeff a = 1; a < 541; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1U);
  EXPECT_THROW(f.inv(0), InputError);
}

TEST(Irreducible, SmallCases) {
  const GFq f(3);
  EXPECT_TRUE(is_irreducible(f, {1, 0, 1}));
  EXPECT_FALSE(is_irreducible(f, {2, 0, 1}));
  EXPECT_TRUE(is_irreducible(f, {1, 2, 0, 1}));
  EXPECT_THROW(is_irreducible(f, {}), InputError);
  EXPECT_THROW(is_irreducible(f, {1, 2}), InputError);
}

// Oracle: a cubic or quadratic is irreducible iff it has no root.
TEST(Irreducible, AgreesWithRootCountForLowDegree) {
  const GFq f(5);
  for (Coeff a = 0; a < 5; ++a) {
    for (Coeff b = 0; b < 5; ++b) {
      for (Coeff c = 0; c < 5; ++c) {
        const Poly<GFq> p{a, b, c, 1};
        bool has_root = false;
        for (Coeff x = 0; x < 5; ++x) has_root = has_root || poly_eval(f, p, x) == 0;
        EXPECT_EQ(is_irreducible(f, p), !has_root);
      }
    }
  }
}

// Oracle: count monic irreducibles of degree 4 over F_3 by Gauss's formula.
TEST(Irreducible, CountMatchesNecklaceFormula) {
  const GFq f(3);
  int count = 0;
  for (int index = 0; index < 81; ++index) {
    Poly<GFq> p{static_cast<Coeff>(index % 3), static_cast<Coeff>(index / 3 % 3), static_cast<Coeff>(index / 9 % 3),
                static_cast<Coeff>(index / 27), 1};
    count += is_irreducible(f, p) ? 1 : 0;
  }
  EXPECT_EQ(count, (81 - 9) / 4);
}

TEST(Irreducible, RandomIsDeterministicAndValid) {
  SplitMix64 a(7), b(7);
  EXPECT_EQ(random_irreducible(3, 2, a), random_irreducible(3, 2, b));
  SplitMix64 c(11);
  const auto linear = random_irreducible(3, 1, c);
  EXPECT_EQ(linear.size(), 2U);
  SplitMix64 d(12);
  EXPECT_TRUE(is_irreducible(GFq(5), random_irreducible(5, 8, d)));
}

TEST(Frobenius, F9Examples) {
  const GFqk f = f9();
  EXPECT_EQ(f.frobenius({0, 1}), (GFqk::Elem{0, 2}));
  EXPECT_EQ(f.frobenius({2, 0}), (GFqk::Elem{2, 0}));
  SplitMix64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto e = f.random(rng);
    EXPECT_EQ(f.frobenius(e, 2), e);
    EXPECT_EQ(f.frobenius(e), power(f, e, 3));
  }
}

TEST(Roots, F9Sqrt) {
  const GFqk f = f9();
  EXPECT_EQ(sqrt(f, f.scalar(2)), (GFqk::Elem{0, 1}));
  EXPECT_EQ(sqrt(f, f.zero()), f.zero());
  EXPECT_FALSE(sqrt(f, GFqk::Elem{1, 1}).has_value());
}

TEST(Roots, F9QuadraticExamples) {
  const GFqk f = f9();
  const auto roots = solve_quadratic(f, f.zero(), f.one());
  ASSERT_EQ(roots.roots.size(), 2U);
  EXPECT_EQ(roots.roots[0], (GFqk::Elem{0, 1}));
  EXPECT_EQ(roots.roots[1], (GFqk::Elem{0, 2}));
  EXPECT_TRUE(solve_quadratic(f, f.zero(), GFqk::Elem{1, 1}).roots.empty());

  const GFq f3(3);
  const auto double_root = solve_quadratic(f3, Coeff{2}, Coeff{1});
  ASSERT_EQ(double_root.roots.size(), 1U);
  EXPECT_EQ(double_root.roots[0], 2U);
  EXPECT_TRUE(double_root.double_root);
}

TEST(Roots, Qm1PowerExamples) {
  const GFqk f = f9();
  EXPECT_TRUE(is_qm1_power(f, f.scalar(2)));
  EXPECT_FALSE(is_qm1_power(f, GFqk::Elem{1, 1}));
  EXPECT_TRUE(is_qm1_power(f, f.one()));
  EXPECT_THROW(is_qm1_power(f, f.zero()), InputError);
}

TEST(Roots, RthRootExamples) {
  const GFqk f = f9();
  const auto one_root = rth_root(f, f.one(), 2);
  ASSERT_TRUE(one_root.has_value());
  EXPECT_TRUE(f.is_one(power(f, *one_root, std::uint64_t{2})));
  const auto w = rth_root(f, f.scalar(2), 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(f.mul(*w, *w), f.scalar(2));
  EXPECT_FALSE(rth_root(f, GFqk::Elem{1, 1}, 2).has_value());
  EXPECT_THROW(rth_root(f, f.zero(), 2), InputError);
}

// (q-1)-th roots for q with composite q-1 (q = 13: 12 = 2^2 * 3; q = 31: 2*3*5).
TEST(Roots, RthRootCompositeExponent) {
  for (std::uint32_t q : {13U, 31U, 541U}) {
    SplitMix64 rng(q);
    const GFqk f(GFq(q), random_irreducible(q, 3, rng));
    for (int i = 0; i < 40; ++i) {
      auto u = f.random(rng);
      if (f.is_zero(u)) continue;
      const auto target = power(f, u, std::uint64_t{q - 1});
      const auto w = rth_root(f, target, q - 1);
      ASSERT_TRUE(w.has_value());
      EXPECT_EQ(power(f, *w, std::uint64_t{q - 1}), target);
    }
  }
}

// Exhaustive: the number of nonzero non-(q-1)-th powers.
TEST(Roots, Qm1PowerCountExhaustive) {
  for (const GFqk& f : {f9(), f27(), f25()}) {
    const std::uint64_t size = static_cast<std::uint64_t>(f.order());
    const std::uint64_t q = f.characteristic();
    std::uint64_t outside = 0;
    for (const auto& c : all_elements(f)) {
      if (!f.is_zero(c) && !is_qm1_power(f, c)) ++outside;
    }
    EXPECT_EQ(outside, size - (size - 1) / (q - 1) - 1);
  }
}

// Exhaustive cross-check of solve_quadratic against evaluation.
TEST(Roots, SolveQuadraticExhaustive) {
  for (const GFqk& f : {f9(), f27()}) {
    const auto elements = all_elements(f);
    for (const auto& s : elements) {
      for (const auto& t : elements) {
        std::vector<GFqk::Elem> expected;
        for (const auto& x : elements) {
          if (f.is_zero(f.add(f.add(f.mul(x, x), f.mul(s, x)), t))) expected.push_back(x);
        }
        std::sort(expected.begin(), expected.end());
        const auto got = solve_quadratic(f, s, t);
        EXPECT_EQ(got.roots, expected);
        EXPECT_EQ(got.double_root, expected.size() == 1);
      }
    }
  }
}

template <class F>
void check_field_axioms(const F& f, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (int i = 0; i < 1000; ++i) {
    const auto a = f.random(rng);
    const auto b = f.random(rng);
    const auto c = f.random(rng);
    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    if (!f.is_zero(a)) ASSERT_TRUE(f.is_one(f.mul(a, f.inv(a))));
    ASSERT_EQ(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
    ASSERT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
  }
}

TEST(Tower, FieldAxiomsOnEveryLevel) {
  const auto ctx = TowerContext::quadratic(5, {2, 4, 0, 1}, {1, 0, 0}, {2, 1, 0});
  check_field_axioms(ctx.fq(), 1);
  check_field_axioms(ctx.fk(), 2);
  check_field_axioms(ctx.fn(), 3);
}

TEST(Tower, GammaSatisfiesItsQuadratic) {
  SplitMix64 rng(5);
  const GFq fq(3);
  const auto mod = random_irreducible(3, 3, rng);
  const GFqk fk(fq, mod);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = fk.random(rng);
    const auto c = fk.random(rng);
    if (!is_irreducible(fk, Poly<GFqk>{c, b, fk.one()})) {
      EXPECT_THROW(TowerContext::quadratic(3, mod, b, c), ParameterError);
      continue;
    }
    const auto ctx = TowerContext::quadratic(3, mod, b, c);
    const auto& fn = ctx.fn();
    const auto g = ctx.gamma();
    const auto lhs = fn.mul(g, g);
    const auto rhs = fn.sub(fn.neg(fn.mul(ctx.embed(b), g)), ctx.embed(c));
    EXPECT_EQ(lhs, rhs);
    const auto e = fn.random(rng);
    EXPECT_EQ(ctx.unflatten(ctx.flatten(e)), e);
    // flatten basis is (omega, omega * gamma)
    GFqk::Elem omega = fk.zero();
    omega[1] = 1;
    const auto coords = ctx.flatten(fn.mul(ctx.embed(omega), g));
    std::vector<Coeff> expected(6, 0);
    expected[4] = 1;
    EXPECT_EQ(coords, expected);
  }
}

TEST(Tower, RejectsReducibleModuli) {
  EXPECT_THROW(TowerContext::quadratic(3, {2, 0, 1}, {0, 0}, {1, 0}), ParameterError);
}

TEST(LinearizedT, F9Example) {
  const GFqk f = f9();
  const auto t = linearized_T(f, GFqk::Elem{1, 1});
  EXPECT_EQ(t.forward, linalg::Matrix(2, 2, std::vector<Coeff>{0, 2, 2, 2}));
  EXPECT_EQ(linalg::multiply(f.base(), t.inverse, t.forward), linalg::identity(f.base(), 2));
  EXPECT_THROW(linearized_T(f, f.scalar(2)), ParameterError);
}

TEST(LinearizedT, InverseOnRandomElements) {
  SplitMix64 rng(17);
  const GFq fq(7);
  const GFqk f(fq, random_irreducible(7, 4, rng));
  GFqk::Elem c;
  do {
    c = f.random(rng);
  } while (f.is_zero(c) || is_qm1_power(f, c));
  const auto t = linearized_T(f, c);
  EXPECT_EQ(linalg::apply(fq, t.forward, std::span<const Coeff>(f.zero())), f.zero());
  for (int i = 0; i < 100; ++i) {
    const auto u = f.random(rng);
    const auto image = f.sub(u, f.mul(c, f.frobenius(u)));
    EXPECT_EQ(linalg::apply(fq, t.forward, std::span<const Coeff>(u)), image);
    EXPECT_EQ(linalg::apply(fq, t.inverse, std::span<const Coeff>(image)), u);
  }
}

}  // namespace
}  // namespace sidon::ff
