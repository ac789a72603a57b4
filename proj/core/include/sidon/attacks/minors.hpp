#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sidon/crypto/keys.hpp"
#include "sidon/rng.hpp"

namespace sidon::attacks {

using crypto::Coeff;
using crypto::GFq;
using crypto::GFqn;
using crypto::Matrix;
using crypto::PrivateKey;
using crypto::PublicKey;
using crypto::Vector;

enum class SystemSource { omega_lin, gamma_lin, omega_q };

/// Linearized 2x2-minor system of a symmetric pencil sum_i y_i P^(i).
///
/// Column c stands for z_{s,t} = y_s y_t (s <= t, 0-based, upper-triangle
/// order). Row r is the minor with rows (i, j) and columns (l, d), i < j,
/// l < d; the mirrored minor ((l, d), (i, j)) has the same polynomial, so
/// only (i, j) <= (l, d) in triangle order is kept.
///
/// For Omega_q each column block of width inner_cols and row block of height
/// inner_rows refine one column / row of Omega_lin (Kronecker layout).
struct LinearizedSystem {
  SystemSource source = SystemSource::omega_lin;
  Matrix matrix;
  std::vector<std::pair<std::size_t, std::size_t>> col_index;
  std::vector<std::array<std::size_t, 4>> row_index;
  std::size_t inner_cols = 1;
  std::size_t inner_rows = 1;
};

/// Builds the deduplicated minor system of symmetric m x m matrices.
LinearizedSystem build_minor_system(const GFq& f, const std::vector<Matrix>& pencil, SystemSource source);

LinearizedSystem build_omega_lin(const PublicKey& pub);

/// u = (nu, completion) spans F_{q^n}; u^T u = sum beta_i N^(i); beta = u E
/// (column i of E holds the u-coordinates of beta_i); beta^T beta = sum beta_i B^(i).
struct ExtendedBasisData {
  std::vector<GFqn::Elem> u;
  std::vector<Matrix> n;
  Matrix e;
  std::vector<Matrix> b;
};

ExtendedBasisData extend_basis(const PrivateKey& priv, SplitMix64& rng);
LinearizedSystem build_gamma_lin(const ExtendedBasisData& ext, const GFq& f);
std::pair<ExtendedBasisData, LinearizedSystem> build_gamma_lin(const PrivateKey& priv, SplitMix64& rng);

/// z^(l)_{s,t} = (beta_s beta_t)_l, the planted kernel vectors (one per l).
std::vector<Vector> planted_kernel_vectors(const PrivateKey& priv);

/// True iff every column of `vectors` (as lists) lies in ker(matrix).
bool annihilates(const GFq& f, const Matrix& matrix, const std::vector<Vector>& vectors);

/// True iff Span(a) == Span(b).
bool same_span(const GFq& f, const std::vector<Vector>& a, const std::vector<Vector>& b);

struct NamedCheck {
  std::string name;
  bool pass = false;
};

struct MinorReport {
  std::uint32_t q = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t omega_rows = 0;
  std::size_t omega_cols = 0;
  std::size_t omega_rank = 0;
  std::size_t omega_kernel_dim = 0;
  std::size_t gamma_rank = 0;
  std::size_t gamma_kernel_dim = 0;
  std::size_t planted_span_dim = 0;
  std::size_t row_bound = 0;     // C(C(k,2)+1, 2)
  std::size_t kernel_bound = 0;  // C(n+1,2) - n, upper bound for rank(Omega_lin)
  std::vector<NamedCheck> checks;

  bool all_pass() const;
};

MinorReport minor_kernel_report(const PrivateKey& priv, const PublicKey& pub, SplitMix64& rng);
std::string to_json(const MinorReport& report);

/// C in F_q^{n x n^2}: C(d, i n + j) = c_d^{(i,j)} with delta_i delta_j =
/// sum_d c_d^{(i,j)} delta_d, delta the flattening basis of `field`.
Matrix structure_constants(const GFqn& field);

/// Omega_lin (x) C.
LinearizedSystem build_omega_q(const PublicKey& pub, const GFqn& field);

struct KroneckerReport {
  std::size_t omega_rank = 0;
  std::size_t c_rank = 0;
  std::size_t omega_q_rank = 0;
  std::size_t omega_q_rows = 0;
  std::size_t omega_q_cols = 0;
  std::size_t predicted_cols = 0;  // 8k^4 + 4k^3
  std::vector<NamedCheck> checks;

  bool all_pass() const;
};

KroneckerReport kronecker_report(const PublicKey& pub, const GFqn& field);
std::string to_json(const KroneckerReport& report);

/// Gamma_lin kernels for the completions drawn from seed1 and seed2 agree.
bool basis_extension_kernel_equality(const PrivateKey& priv, std::uint64_t seed1, std::uint64_t seed2);

}  // namespace sidon::attacks
