#include "sidon/attacks/minors.hpp"

#include <algorithm>

#include <json.hpp>

#include "sidon/error.hpp"

namespace sidon::attacks {

namespace {

using Json = nlohmann::ordered_json;

std::size_t choose2(std::size_t x) { return x * (x - 1) / 2; }

Matrix flat_columns(const GFqn& field, const std::vector<GFqn::Elem>& elems) {
  const std::size_t n = field.dimension();
  Matrix m(n, elems.size(), 0);
  for (std::size_t c = 0; c < elems.size(); ++c) {
    const auto flat = field.flatten(elems[c]);
    for (std::size_t r = 0; r < n; ++r) m(r, c) = flat[r];
  }
  return m;
}

// Coordinates of every product x_s x_t in the basis whose flattened
// columns are inverted by `to_basis`: out[l](s, t) = (x_s x_t)_l.
std::vector<Matrix> product_coordinates(const GFqn& field, const Matrix& to_basis, const std::vector<GFqn::Elem>& x) {
  const GFq& fq = field.base().base();
  const std::size_t n = field.dimension();
  const std::size_t m = x.size();
  std::vector<Matrix> out(n, Matrix(m, m, 0));
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = s; t < m; ++t) {
      const auto flat = field.flatten(field.mul(x[s], x[t]));
      const Vector coords = linalg::apply(fq, to_basis, std::span<const Coeff>(flat));
      for (std::size_t l = 0; l < n; ++l) {
        out[l](s, t) = coords[l];
        out[l](t, s) = coords[l];
      }
    }
  }
  return out;
}

Vector flatten_matrix(const Matrix& m) { return m.data(); }

std::size_t span_dim(const GFq& f, const std::vector<Vector>& vectors, std::size_t length) {
  if (vectors.empty()) return 0;
  return linalg::rank(f, linalg::from_rows(f, vectors, length));
}

void add_check(std::vector<NamedCheck>& checks, std::string name, bool pass) {
  checks.push_back({std::move(name), pass});
}

Json checks_json(const std::vector<NamedCheck>& checks) {
  Json out = Json::object();
  for (const auto& c : checks) out[c.name] = c.pass ? "pass" : "fail";
  return out;
}

}  // namespace

LinearizedSystem build_minor_system(const GFq& f, const std::vector<Matrix>& pencil, SystemSource source) {
  if (pencil.empty()) throw InputError("empty matrix pencil");
  const std::size_t m = pencil[0].rows();
  const std::size_t vars = pencil.size();
  for (const auto& p : pencil) {
    if (p.rows() != m || p.cols() != m) throw InputError("pencil matrices must be square of equal size");
  }

  LinearizedSystem sys;
  sys.source = source;
  for (std::size_t s = 0; s < vars; ++s) {
    for (std::size_t t = s; t < vars; ++t) sys.col_index.emplace_back(s, t);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }

  const std::size_t cols = sys.col_index.size();
  std::vector<Coeff> data;
  data.reserve(choose2(pairs.size() + 1) * cols);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a; b < pairs.size(); ++b) {
      const auto [i, j] = pairs[a];
      const auto [l, d] = pairs[b];
      sys.row_index.push_back({i, j, l, d});
      // Minor: P_il P_jd - P_id P_jl with P = sum_s y_s P^(s).
      for (const auto& [s, t] : sys.col_index) {
        const Matrix& x = pencil[s];
        const Matrix& y = pencil[t];
        Coeff c = f.sub(f.mul(x(i, l), y(j, d)), f.mul(x(i, d), y(j, l)));
        if (s != t) c = f.add(c, f.sub(f.mul(y(i, l), x(j, d)), f.mul(y(i, d), x(j, l))));
        data.push_back(c);
      }
    }
  }
  sys.matrix = Matrix(sys.row_index.size(), cols, std::move(data));
  return sys;
}

LinearizedSystem build_omega_lin(const PublicKey& pub) {
  return build_minor_system(GFq(pub.q), pub.matrices, SystemSource::omega_lin);
}

ExtendedBasisData extend_basis(const PrivateKey& priv, SplitMix64& rng) {
  const GFqn& field = priv.ctx().fn();
  const GFq& fq = priv.ctx().fq();
  const std::size_t n = priv.n();
  ExtendedBasisData ext;
  Matrix u_flat;
  for (int trial = 0;; ++trial) {
    if (trial > 1000) throw InternalError("no invertible basis completion after 1000 draws");
    ext.u = priv.nu();
    while (ext.u.size() < n) ext.u.push_back(field.random(rng));
    u_flat = flat_columns(field, ext.u);
    if (linalg::rank(fq, u_flat) == n) break;
  }
  const Matrix u_inv = *linalg::inverse(fq, u_flat);
  ext.e = linalg::multiply(fq, u_inv, priv.e());
  ext.n = product_coordinates(field, priv.e_inv(), ext.u);
  ext.b = product_coordinates(field, priv.e_inv(), priv.beta());
  return ext;
}

LinearizedSystem build_gamma_lin(const ExtendedBasisData& ext, const GFq& f) {
  return build_minor_system(f, ext.n, SystemSource::gamma_lin);
}

std::pair<ExtendedBasisData, LinearizedSystem> build_gamma_lin(const PrivateKey& priv, SplitMix64& rng) {
  ExtendedBasisData ext = extend_basis(priv, rng);
  LinearizedSystem sys = build_gamma_lin(ext, priv.ctx().fq());
  return {std::move(ext), std::move(sys)};
}

std::vector<Vector> planted_kernel_vectors(const PrivateKey& priv) {
  const auto b = product_coordinates(priv.ctx().fn(), priv.e_inv(), priv.beta());
  std::vector<Vector> out;
  out.reserve(b.size());
  for (const auto& m : b) out.push_back(linalg::vectorize_upper(m));
  return out;
}

bool annihilates(const GFq& f, const Matrix& matrix, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors) {
    const Vector image = linalg::apply(f, matrix, std::span<const Coeff>(v));
    if (std::any_of(image.begin(), image.end(), [](Coeff c) { return c != 0; })) return false;
  }
  return true;
}

bool same_span(const GFq& f, const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) {
    const auto& other = a.empty() ? b : a;
    return other.empty() || span_dim(f, other, other[0].size()) == 0;
  }
  const std::size_t length = a[0].size();
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t joint = span_dim(f, both, length);
  return span_dim(f, a, length) == joint && span_dim(f, b, length) == joint;
}

bool MinorReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
}

MinorReport minor_kernel_report(const PrivateKey& priv, const PublicKey& pub, SplitMix64& rng) {
  const GFq f(pub.q);
  MinorReport r;
  r.q = pub.q;
  r.k = pub.k;
  r.n = pub.n;

  const LinearizedSystem omega = build_omega_lin(pub);
  const linalg::GaussianElimination<GFq> omega_elim(f, omega.matrix);
  r.omega_rows = omega.matrix.rows();
  r.omega_cols = omega.matrix.cols();
  r.omega_rank = omega_elim.rank();
  r.omega_kernel_dim = omega_elim.kernel_dim();
  r.row_bound = choose2(choose2(pub.k) + 1);
  r.kernel_bound = linalg::triangle_size(pub.n) - pub.n;

  const auto [ext, gamma] = build_gamma_lin(priv, rng);
  const linalg::GaussianElimination<GFq> gamma_elim(f, gamma.matrix);
  r.gamma_rank = gamma_elim.rank();
  r.gamma_kernel_dim = gamma_elim.kernel_dim();

  const auto planted = planted_kernel_vectors(priv);
  r.planted_span_dim = span_dim(f, planted, r.omega_cols);

  bool block_ok = true;
  for (std::size_t l = 0; l < pub.n; ++l) {
    for (std::size_t s = 0; s < pub.k; ++s) {
      for (std::size_t t = 0; t < pub.k; ++t) block_ok = block_ok && ext.n[l](s, t) == pub.matrices[l](s, t);
    }
  }
  bool circular = true;
  const Matrix et = linalg::transpose(ext.e);
  for (std::size_t l = 0; l < pub.n; ++l) {
    circular = circular && linalg::multiply(f, linalg::multiply(f, et, ext.n[l]), ext.e) == ext.b[l];
  }
  bool matricize_ok = true;
  for (std::size_t l = 0; l < pub.n; ++l) {
    matricize_ok = matricize_ok && linalg::matricize(f, std::span<const Coeff>(planted[l])) == ext.b[l];
  }
  std::vector<Vector> n_flat;
  for (const auto& m : ext.n) n_flat.push_back(flatten_matrix(m));

  add_check(r.checks, "upper_left_block_is_public_matrix", block_ok);
  add_check(r.checks, "planted_in_ker_omega_lin", annihilates(f, omega.matrix, planted));
  add_check(r.checks, "planted_in_ker_gamma_lin", annihilates(f, gamma.matrix, planted));
  add_check(r.checks, "planted_span_dim_n", r.planted_span_dim == pub.n);
  add_check(r.checks, "extended_matrices_independent", span_dim(f, n_flat, pub.n * pub.n) == pub.n);
  add_check(r.checks, "matricize_planted_equals_B", matricize_ok);
  add_check(r.checks, "circularity_EtNE_equals_B", circular);
  add_check(r.checks, "ker_gamma_in_ker_omega", annihilates(f, omega.matrix, gamma_elim.kernel_basis()));
  add_check(r.checks, "rank_omega_within_bounds", r.omega_rank <= std::min(r.row_bound, r.kernel_bound));
  return r;
}

std::string to_json(const MinorReport& r) {
  Json doc;
  doc["attack"] = "minor";
  doc["q"] = r.q;
  doc["k"] = r.k;
  doc["n"] = r.n;
  doc["rank"] = r.omega_rank;
  doc["kernel_dim"] = r.omega_kernel_dim;
  doc["rows"] = r.omega_rows;
  doc["cols"] = r.omega_cols;
  doc["gamma_lin"] = {{"rank", r.gamma_rank}, {"kernel_dim", r.gamma_kernel_dim}};
  doc["planted_span_dim"] = r.planted_span_dim;
  doc["bounds"] = {{"row_bound", r.row_bound}, {"rank_upper_bound", r.kernel_bound}, {"kernel_lower_bound", r.n}};
  doc["checks"] = checks_json(r.checks);
  return doc.dump(2) + "\n";
}

Matrix structure_constants(const GFqn& field) {
  const std::size_t n = field.dimension();
  std::vector<GFqn::Elem> delta;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Coeff> unit(n, 0);
    unit[i] = 1;
    delta.push_back(field.unflatten(unit));
  }
  Matrix c(n, n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto flat = field.flatten(field.mul(delta[i], delta[j]));
      for (std::size_t d = 0; d < n; ++d) c(d, i * n + j) = flat[d];
    }
  }
  return c;
}

LinearizedSystem build_omega_q(const PublicKey& pub, const GFqn& field) {
  if (field.characteristic() != pub.q || field.dimension() != pub.n) {
    throw InputError("basis field does not match the public key parameters");
  }
  const GFq f(pub.q);
  LinearizedSystem sys = build_omega_lin(pub);
  sys.matrix = linalg::kronecker(f, sys.matrix, structure_constants(field));
  sys.source = SystemSource::omega_q;
  sys.inner_rows = pub.n;
  sys.inner_cols = pub.n * pub.n;
  return sys;
}

bool KroneckerReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
}

KroneckerReport kronecker_report(const PublicKey& pub, const GFqn& field) {
  const GFq f(pub.q);
  KroneckerReport r;
  const LinearizedSystem omega = build_omega_lin(pub);
  const Matrix c = structure_constants(field);
  const LinearizedSystem omega_q = build_omega_q(pub, field);
  r.omega_rank = linalg::rank(f, omega.matrix);
  r.c_rank = linalg::rank(f, c);
  r.omega_q_rank = linalg::rank(f, omega_q.matrix);
  r.omega_q_rows = omega_q.matrix.rows();
  r.omega_q_cols = omega_q.matrix.cols();
  const std::size_t k = pub.k;
  r.predicted_cols = 8 * k * k * k * k + 4 * k * k * k;
  add_check(r.checks, "rank_is_product", r.omega_q_rank == r.omega_rank * r.c_rank);
  add_check(r.checks, "c_full_rank", r.c_rank == pub.n);
  add_check(r.checks, "column_count", r.omega_q_cols == r.predicted_cols);
  return r;
}

std::string to_json(const KroneckerReport& r) {
  Json doc;
  doc["attack"] = "kronecker";
  doc["rank"] = r.omega_q_rank;
  doc["kernel_dim"] = r.omega_q_cols - r.omega_q_rank;
  doc["rows"] = r.omega_q_rows;
  doc["cols"] = r.omega_q_cols;
  doc["omega_lin_rank"] = r.omega_rank;
  doc["c_rank"] = r.c_rank;
  doc["bounds"] = {{"predicted_cols", r.predicted_cols}};
  doc["checks"] = checks_json(r.checks);
  return doc.dump(2) + "\n";
}

bool basis_extension_kernel_equality(const PrivateKey& priv, std::uint64_t seed1, std::uint64_t seed2) {
  const GFq& f = priv.ctx().fq();
  SplitMix64 rng1(seed1);
  SplitMix64 rng2(seed2);
  const auto first = build_gamma_lin(priv, rng1).second;
  const auto second = build_gamma_lin(priv, rng2).second;
  const auto k1 = linalg::GaussianElimination<GFq>(f, first.matrix).kernel_basis();
  const auto k2 = linalg::GaussianElimination<GFq>(f, second.matrix).kernel_basis();
  return same_span(f, k1, k2);
}

}  // namespace sidon::attacks
