#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "sidon/attacks/bilinear.hpp"
#include "sidon/attacks/kernel.hpp"
#include "sidon/attacks/minors.hpp"
#include "sidon/attacks/polynomial_system.hpp"
#include "sidon/attacks/structured.hpp"
#include "sidon/crypto/cipher.hpp"
#include "sidon/crypto/codec.hpp"
#include "sidon/ff/irreducible.hpp"
#include "sidon/ff/poly_roots.hpp"
#include "sidon/error.hpp"

namespace sidon::attacks {
namespace {

using crypto::keygen;

std::size_t choose2(std::size_t x) { return x * (x - 1) / 2; }

// Oracle for the Omega_lin rows: the 2x2 minors of sum_i y_i M^(i) evaluated
// directly at a point y of F_q^n.
Vector minors_at(const GFq& f, const std::vector<Matrix>& pencil, const Vector& y,
                 const std::vector<std::array<std::size_t, 4>>& rows) {
  const std::size_t m = pencil[0].rows();
  Matrix p(m, m, 0);
  for (std::size_t i = 0; i < pencil.size(); ++i) p = linalg::add(f, p, linalg::scale(f, y[i], pencil[i]));
  Vector out;
  for (const auto& [i, j, l, d] : rows) out.push_back(f.sub(f.mul(p(i, l), p(j, d)), f.mul(p(i, d), p(j, l))));
  return out;
}

TEST(PolynomialSystem, TextRoundTrip) {
  const ff::PrimeField f(5);
  PolynomialSystem sys;
  sys.q = 5;
  sys.k = 3;
  sys.variables = {"u_1_1", "g_2", "b_3_1"};
  SparsePolynomial p;
  p.add_term(Monomial{{0, 2}, {1, 1}}, 3, f);
  p.add_term(Monomial{{2, 1}}, 4, f);
  p.add_term(Monomial{}, 1, f);
  sys.equations = {p, SparsePolynomial{}};
  const std::string text = to_text(sys);
  EXPECT_NE(text.find("# q=5 k=3 vars=3 eqs=2"), std::string::npos);
  EXPECT_NE(text.find("3*u_1_1^2*g_2"), std::string::npos);
  EXPECT_NE(text.find("0 = 0"), std::string::npos);
  EXPECT_EQ(parse_system(text), sys);
  EXPECT_EQ(sys.degree(), 3u);

  // 3 u^2 g + 4 b + 1 at u = 2, g = 1, b = 3: 12 + 12 + 1 = 25 = 0 mod 5.
  EXPECT_EQ(p.evaluate(f, Vector{2, 1, 3}), 0u);
  EXPECT_EQ(p.evaluate(f, Vector{1, 1, 1}), 3u);
}

TEST(PolynomialSystem, AddTermCancels) {
  const ff::PrimeField f(3);
  SparsePolynomial p;
  p.add_term(Monomial{{0, 1}}, 1, f);
  p.add_term(Monomial{{0, 1}}, 2, f);
  EXPECT_TRUE(p.is_zero());
}

TEST(PolynomialSystem, ParseRejectsMalformed) {
  EXPECT_THROW(parse_system("1*x = 0\n"), InputError);
  EXPECT_THROW(parse_system("# q=3 k=3 vars=1 eqs=1\n# vars: x\n1*y = 0\n"), InputError);
  EXPECT_THROW(parse_system("# q=3 k=3 vars=1 eqs=1\n# vars: x\n5*x = 0\n"), InputError);
  EXPECT_THROW(parse_system("# q=3 k=3 vars=1 eqs=2\n# vars: x\n1*x = 0\n"), InputError);
  EXPECT_THROW(parse_system("# q=3 k=3 vars=1 eqs=1\n# vars: x\n1*x = 1\n"), InputError);
}

TEST(FindRoot, AgreesWithExhaustiveSearch) {
  SplitMix64 rng(17);
  for (std::uint32_t q : {3U, 5U}) {
    const ff::GFq fq(q);
    const ff::GFqk fk(fq, ff::random_irreducible(fq, 2, rng));
    for (int trial = 0; trial < 60; ++trial) {
      ff::Poly<ff::GFqk> p;
      for (int i = 0; i < 3; ++i) p.push_back(fk.random(rng));
      p.push_back(fk.one());
      bool has_root = false;
      for (std::uint64_t index = 0; index < q * q; ++index) {
        has_root = has_root || fk.is_zero(ff::poly_eval(fk, p, fk.element_from_index(index)));
      }
      const auto root = ff::find_root(fk, p, rng);
      ASSERT_EQ(root.has_value(), has_root);
      if (root) EXPECT_TRUE(fk.is_zero(ff::poly_eval(fk, p, *root)));
    }
  }
}

TEST(KernelAttack, PlantedVectorIsInKernel) {
  SplitMix64 rng(1);
  const auto keys = keygen(3, 3, rng);
  const auto& fn = keys.priv.ctx().fn();
  const auto& nu = keys.priv.nu();
  EXPECT_TRUE(in_secret_kernel(keys.priv, {nu[1], fn.neg(nu[0]), fn.zero()}));
  EXPECT_FALSE(in_secret_kernel(keys.priv, {nu[1], nu[0], fn.zero()}));
}

TEST(KernelAttack, RateWithinFiveSigma) {
  SplitMix64 rng(2);
  const auto keys = keygen(3, 3, rng);
  const auto e = kernel_attack_experiment(keys.priv, 100000, 99);
  EXPECT_DOUBLE_EQ(e.theoretical_rate, 1.0 / 729.0);
  EXPECT_TRUE(e.within(5.0)) << e.hits;
  EXPECT_EQ(kernel_attack_experiment(keys.priv, 1000, 7).hits, kernel_attack_experiment(keys.priv, 1000, 7).hits);
}

TEST(KernelAttack, BaseFieldProbe) {
  SplitMix64 rng(3);
  const auto keys = keygen(3, 3, rng);
  EXPECT_TRUE(base_field_kernel_vector_has_no_zero_entry(keys.priv, Vector{1, 0, 0}));
  EXPECT_THROW(base_field_kernel_vector_has_no_zero_entry(keys.priv, Vector{0, 0, 0}), InputError);
  EXPECT_TRUE(base_field_kernel_probe(keys.priv, 10000, 5));
}

TEST(KipnisShamir, GroundTruthSolvesEverySystematicForm) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {5U, 4UL}}) {
    SplitMix64 rng(q + k);
    const auto keys = keygen(q, k, rng);
    const auto& fn = keys.priv.ctx().fn();
    for (std::size_t pos = 0; pos < k; ++pos) {
      const auto sys = build_ks_system(keys.pub, pos);
      EXPECT_EQ(sys.equations.size(), k * (k - 1));
      EXPECT_EQ(sys.variables.size(), 2 * k + k - 1);
      EXPECT_LE(sys.degree(), 2u);
      auto truth = ks_ground_truth(keys.priv, pos);
      EXPECT_TRUE(ks_verify(keys.priv, sys, truth));
      truth[2 * k] = fn.add(truth[2 * k], fn.one());
      EXPECT_FALSE(ks_verify(keys.priv, sys, truth));
    }
    EXPECT_THROW(build_ks_system(keys.pub, k), InputError);
  }
}

TEST(KipnisShamir, GuessRate) {
  SplitMix64 rng(8);
  const auto keys = keygen(3, 3, rng);
  const auto r = ks_report(keys.priv, keys.pub, 0, 100000, 4);
  EXPECT_TRUE(r.verified);
  const double p = 1.0 / 729.0;
  const double sigma = std::sqrt(p * (1 - p) / 100000.0);
  EXPECT_NEAR(static_cast<double>(r.guess_hits) / 100000.0, p, 5 * sigma);
}

TEST(OmegaLin, ShapeAndMinorOracle) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {3U, 4UL}, {5U, 4UL}}) {
    SplitMix64 rng(10 * q + k);
    const auto keys = keygen(q, k, rng);
    const GFq f(q);
    const auto sys = build_omega_lin(keys.pub);
    const std::size_t n = 2 * k;
    EXPECT_EQ(sys.matrix.cols(), linalg::triangle_size(n));
    EXPECT_EQ(sys.matrix.rows(), choose2(choose2(k) + 1));
    for (int trial = 0; trial < 50; ++trial) {
      Vector y(n);
      for (auto& x : y) x = f.random(rng);
      Vector z;
      for (const auto& [s, t] : sys.col_index) z.push_back(f.mul(y[s], y[t]));
      EXPECT_EQ(linalg::apply(f, sys.matrix, std::span<const Coeff>(z)), minors_at(f, keys.pub.matrices, y, sys.row_index));
    }
  }
}

TEST(OmegaLin, KernelIsTwiceNForLargerK) {
  for (auto [q, k] : {std::pair{3U, 4UL}, {5U, 4UL}, {3U, 5UL}, {5U, 5UL}}) {
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      SplitMix64 rng(seed * 100 + q * 10 + k);
      const auto keys = keygen(q, k, rng);
      const auto sys = build_omega_lin(keys.pub);
      const linalg::GaussianElimination<GFq> elim(GFq(q), sys.matrix);
      EXPECT_EQ(elim.kernel_dim(), 4 * k) << "q=" << q << " k=" << k;
      EXPECT_TRUE(annihilates(GFq(q), sys.matrix, planted_kernel_vectors(keys.priv)));
    }
  }
}

TEST(GammaLin, ExtendedBasisInvariants) {
  SplitMix64 rng(21);
  const auto keys = keygen(3, 4, rng);
  const GFq f(3);
  const auto [ext, gamma] = build_gamma_lin(keys.priv, rng);
  ASSERT_EQ(ext.n.size(), 8u);
  for (std::size_t l = 0; l < 8; ++l) {
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t t = 0; t < 4; ++t) EXPECT_EQ(ext.n[l](s, t), keys.pub.matrices[l](s, t));
    }
    EXPECT_EQ(linalg::multiply(f, linalg::multiply(f, linalg::transpose(ext.e), ext.n[l]), ext.e), ext.b[l]);
  }
  EXPECT_TRUE(linalg::inverse(f, ext.e).has_value());
  EXPECT_EQ(gamma.matrix.cols(), linalg::triangle_size(8));
  EXPECT_EQ(gamma.matrix.rows(), choose2(choose2(8) + 1));
  // Oracle for beta = u E: sum_j E_{j,i} u_j.
  const auto& fn = keys.priv.ctx().fn();
  const auto beta = keys.priv.beta();
  for (std::size_t i = 0; i < 8; ++i) {
    auto acc = fn.zero();
    for (std::size_t j = 0; j < 8; ++j) acc = fn.add(acc, fn.scale(fn.base().scalar(ext.e(j, i)), ext.u[j]));
    EXPECT_EQ(acc, beta[i]);
  }
}

TEST(GammaLin, KernelIsNAndInsideOmegaKernel) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {3U, 4UL}, {5U, 4UL}, {3U, 5UL}}) {
    SplitMix64 rng(q * 7 + k);
    const auto keys = keygen(q, k, rng);
    const GFq f(q);
    const auto [ext, gamma] = build_gamma_lin(keys.priv, rng);
    const linalg::GaussianElimination<GFq> elim(f, gamma.matrix);
    EXPECT_EQ(elim.kernel_dim(), 2 * k) << "q=" << q << " k=" << k;
    const auto omega = build_omega_lin(keys.pub);
    EXPECT_TRUE(annihilates(f, omega.matrix, elim.kernel_basis()));
    // The planted vectors span the whole kernel.
    EXPECT_TRUE(same_span(f, elim.kernel_basis(), planted_kernel_vectors(keys.priv)));
  }
}

TEST(MinorReport, AllChecksPass) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {3U, 4UL}, {5U, 4UL}}) {
    SplitMix64 rng(q * 3 + k);
    const auto keys = keygen(q, k, rng);
    const auto r = minor_kernel_report(keys.priv, keys.pub, rng);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " q=" << q << " k=" << k;
    EXPECT_EQ(r.planted_span_dim, 2 * k);
    EXPECT_EQ(r.gamma_kernel_dim, 2 * k);
    if (k == 4) EXPECT_EQ(r.omega_kernel_dim, 16u);
    const auto json = to_json(r);
    EXPECT_NE(json.find("\"kernel_dim\""), std::string::npos);
    EXPECT_NE(json.find("\"bounds\""), std::string::npos);
    EXPECT_EQ(json.find("fail"), std::string::npos);
  }
}

TEST(MinorReport, OmegaRankRespectsRowBoundAtK3) {
  // With k = 3 there are at most 6 independent rows, so the kernel has
  // dimension at least 21 - 6 = 15 > 2n.
  SplitMix64 rng(33);
  const auto keys = keygen(3, 3, rng);
  const auto r = minor_kernel_report(keys.priv, keys.pub, rng);
  EXPECT_LE(r.omega_rank, 6u);
  EXPECT_GE(r.omega_kernel_dim, 15u);
}

TEST(OmegaQ, StructureConstantsOracle) {
  SplitMix64 rng(40);
  const auto keys = keygen(3, 3, rng);
  const auto& fn = keys.priv.ctx().fn();
  const GFq f(3);
  const Matrix c = structure_constants(fn);
  EXPECT_EQ(linalg::rank(f, c), 6u);
  // x y expands as sum_{i,j} x_i y_j delta_i delta_j.
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = fn.random(rng);
    const auto y = fn.random(rng);
    const auto fx = fn.flatten(x);
    const auto fy = fn.flatten(y);
    Vector outer;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) outer.push_back(f.mul(fx[i], fy[j]));
    }
    EXPECT_EQ(linalg::apply(f, c, std::span<const Coeff>(outer)), fn.flatten(fn.mul(x, y)));
  }
}

TEST(OmegaQ, KroneckerRankLaw) {
  {
    SplitMix64 rng(41);
    const auto keys = keygen(3, 3, rng);
    const auto r = kronecker_report(keys.pub, keys.priv.ctx().fn());
    EXPECT_EQ(r.omega_q_cols, 756u);
    EXPECT_TRUE(r.all_pass());
  }
  SplitMix64 rng(42);
  const auto keys = keygen(3, 4, rng);
  const auto r = kronecker_report(keys.pub, keys.priv.ctx().fn());
  EXPECT_EQ(r.omega_q_cols, 2304u);
  EXPECT_EQ(r.predicted_cols, 2304u);
  EXPECT_EQ(r.omega_rank, 20u);
  EXPECT_EQ(r.c_rank, 8u);
  EXPECT_EQ(r.omega_q_rank, 160u);
  EXPECT_TRUE(r.all_pass());
  // A foreign basis gives the same rank.
  SplitMix64 eve_rng(43);
  const auto eve = random_representation(3, 4, eve_rng);
  EXPECT_EQ(kronecker_report(keys.pub, eve.fn()).omega_q_rank, 160u);
}

TEST(BasisExtension, KernelsAgree) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {3U, 4UL}}) {
    SplitMix64 rng(50 + k);
    const auto keys = keygen(q, k, rng);
    EXPECT_TRUE(basis_extension_kernel_equality(keys.priv, 9, 9));
    for (std::uint64_t pair = 0; pair < 5; ++pair) {
      EXPECT_TRUE(basis_extension_kernel_equality(keys.priv, 2 * pair + 1, 2 * pair + 1000));
    }
  }
}

TEST(BasisExtension, SameSpanDetectsDifference) {
  const GFq f(3);
  EXPECT_TRUE(same_span(f, {{1, 0, 0}, {0, 1, 0}}, {{1, 1, 0}, {1, 2, 0}}));
  EXPECT_FALSE(same_span(f, {{1, 0, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 0, 1}}));
  EXPECT_FALSE(same_span(f, {{1, 0, 0}}, {}));
}

TEST(Structured, CountsAndDegrees) {
  for (std::size_t k : {3UL, 4UL}) {
    SplitMix64 rng(60 + k);
    const auto keys = keygen(3, k, rng);
    const auto sys = structured_attack_emit(keys.pub, keys.priv.ctx());
    EXPECT_EQ(sys.quartic.equations.size(), k * k * (k + 1));
    EXPECT_EQ(sys.quartic.variables.size(), 5 * k * k + 2 * k);
    EXPECT_EQ(sys.quadratic.equations.size(), k * k * (k + 1));
    EXPECT_EQ(sys.quadratic.variables.size(), k * k * k * k + 8 * k * k + 2 * k);
    EXPECT_LE(sys.quartic.degree(), 4u);
    EXPECT_LE(sys.quadratic.degree(), 2u);
  }
}

TEST(Structured, GroundTruthAndPerturbation) {
  for (auto [q, k] : {std::pair{3U, 3UL}, {5U, 3UL}, {3U, 4UL}}) {
    SplitMix64 rng(70 + q + k);
    const auto keys = keygen(q, k, rng);
    const auto r = structured_report(keys.priv, keys.pub);
    EXPECT_TRUE(r.quartic_verified);
    EXPECT_TRUE(r.quadratic_verified);
    EXPECT_GT(r.perturbed_nonzero_residuals, 0u);
    EXPECT_EQ(to_json(r).find("fail"), std::string::npos);
  }
}

TEST(Structured, TextRoundTripPreservesVerification) {
  SplitMix64 rng(80);
  const auto keys = keygen(3, 3, rng);
  const auto sys = structured_attack_emit(keys.pub, keys.priv.ctx());
  const auto parsed = parse_system(to_text(sys.quartic));
  EXPECT_EQ(parsed, sys.quartic);
  EXPECT_TRUE(structured_attack_verify(keys.priv, parsed));
}

TEST(Structured, CrossRepresentation) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SplitMix64 rng(90 + seed);
    const auto keys = keygen(3, 3, rng);
    const auto eve = random_representation(3, 3, rng);
    const auto sys = structured_attack_emit(keys.pub, eve);
    EXPECT_TRUE(structured_attack_verify(keys.priv, sys.quartic, eve, rng));
    EXPECT_TRUE(structured_attack_verify(keys.priv, sys.quadratic, eve, rng));
    // Alice's assignment does not solve Eve's system unless the towers coincide.
    if (eve.modulus_k() != keys.priv.ctx().modulus_k()) {
      EXPECT_FALSE(structured_attack_verify(keys.priv, sys.quartic));
    }
  }
}

TEST(Structured, IsomorphismIsMultiplicative) {
  SplitMix64 rng(95);
  const auto keys = keygen(5, 3, rng);
  const auto eve = random_representation(5, 3, rng);
  const TowerIsomorphism iso(keys.priv.ctx(), eve, rng);
  const auto& fa = keys.priv.ctx().fn();
  const auto& fe = eve.fn();
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = fa.random(rng);
    const auto y = fa.random(rng);
    EXPECT_EQ(iso.map_n(fa.mul(x, y)), fe.mul(iso.map_n(x), iso.map_n(y)));
    EXPECT_EQ(iso.map_n(fa.add(x, y)), fe.add(iso.map_n(x), iso.map_n(y)));
  }
}

TEST(Bilinear, ExhaustiveAgreementWithDecrypt) {
  SplitMix64 rng(100);
  const auto keys = keygen(3, 3, rng);
  for (std::uint64_t m = 0; m < 182; ++m) {
    const auto msg = crypto::encode_message(3, 3, m);
    const auto ct = crypto::encrypt(keys.pub, msg);
    const auto found = bilinear_bruteforce(keys.pub, ct);
    ASSERT_EQ(found.size(), 1u) << m;
    EXPECT_EQ(*found.begin(), msg);
    EXPECT_EQ(*found.begin(), crypto::decrypt(keys.priv, ct));
  }
}

TEST(Bilinear, RandomVectorsMostlyHaveNoPreimage) {
  SplitMix64 rng(101);
  const auto keys = keygen(3, 3, rng);
  const GFq f(3);
  int empty = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Vector ct(6);
    for (auto& x : ct) x = f.random(rng);
    const auto found = bilinear_bruteforce(keys.pub, ct);
    EXPECT_LE(found.size(), 1u);
    if (found.empty()) ++empty;
  }
  // 182 products among 728 nonzero vectors: about 3/4 have no preimage.
  EXPECT_GT(empty, 50);
}

}  // namespace
}  // namespace sidon::attacks
