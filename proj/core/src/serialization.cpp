#include "sidon/crypto/serialization.hpp"

#include <json.hpp>

#include "sidon/error.hpp"

namespace sidon::crypto {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

// Field access with error translation; nlohmann throws its own types.
template <class T>
T field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + name + "' has the wrong type");
  }
}

void check_schema(const Json& doc) {
  if (field<int>(doc, "schema") != kSchema) throw InputError("unsupported schema version");
}

std::vector<Coeff> coefficients(const Json& doc, const char* name, std::uint32_t q, std::size_t length) {
  const auto values = field<std::vector<std::uint64_t>>(doc, name);
  if (values.size() != length) {
    throw InputError(std::string("field '") + name + "' must have " + std::to_string(length) + " entries");
  }
  std::vector<Coeff> out;
  out.reserve(length);
  for (auto v : values) {
    if (v >= q) throw InputError(std::string("field '") + name + "' has an entry outside [0, q)");
    out.push_back(static_cast<Coeff>(v));
  }
  return out;
}

std::uint32_t read_q(const Json& doc) {
  const auto q = field<std::uint64_t>(doc, "q");
  if (q > GFq::kMaxModulus) throw ParameterError("q is too large");
  GFq check(static_cast<std::uint32_t>(q));  // throws ParameterError unless an odd prime
  return static_cast<std::uint32_t>(q);
}

std::size_t read_k(const Json& doc) {
  const auto k = field<std::uint64_t>(doc, "k");
  if (k < 3) throw ParameterError("k must be >= 3");
  if (k > 4096) throw ParameterError("k is unreasonably large");
  return static_cast<std::size_t>(k);
}

Matrix square(std::uint32_t q, const Json& doc, const char* name, std::size_t size) {
  return Matrix(size, size, coefficients(doc, name, q, size * size));
}

}  // namespace

std::string to_json(const PublicKey& pub) {
  Json doc;
  doc["schema"] = kSchema;
  doc["q"] = pub.q;
  doc["k"] = pub.k;
  doc["n"] = pub.n;
  Json matrices = Json::array();
  for (const auto& m : pub.matrices) matrices.push_back(linalg::vectorize_upper(m));
  doc["matrices"] = std::move(matrices);
  if (pub.p_r) doc["P_R"] = *pub.p_r;
  return doc.dump() + "\n";
}

std::string to_json(const PrivateKey& priv) {
  const auto& ctx = priv.ctx();
  Json doc;
  doc["schema"] = kSchema;
  doc["q"] = priv.q();
  doc["k"] = priv.k();
  doc["modulusK"] = ctx.modulus_k();
  doc["b"] = ctx.b();
  doc["c"] = ctx.c();
  doc["A"] = priv.a().data();
  doc["E"] = priv.e().data();
  doc["P_R"] = priv.p_r();
  return doc.dump() + "\n";
}

std::string to_json(const Ciphertext& ct) {
  Json doc;
  doc["schema"] = kSchema;
  doc["q"] = ct.q;
  doc["n"] = ct.ct.size();
  doc["ct"] = ct.ct;
  return doc.dump() + "\n";
}

std::string matrix_to_json(std::uint32_t q, const Matrix& m) {
  Json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["q"] = q;
  doc["data"] = m.data();
  return doc.dump() + "\n";
}

PublicKey public_key_from_json(std::string_view text) {
  const Json doc = parse(text);
  check_schema(doc);
  PublicKey pub;
  pub.q = read_q(doc);
  pub.k = read_k(doc);
  pub.n = field<std::size_t>(doc, "n");
  if (pub.n != 2 * pub.k) throw InputError("n must equal 2k");
  const auto& matrices = doc.at("matrices");
  if (!matrices.is_array() || matrices.size() != pub.n) throw InputError("public key must hold n matrices");
  const GFq f(pub.q);
  for (std::size_t i = 0; i < pub.n; ++i) {
    Json wrapper;
    wrapper["m"] = matrices[i];
    const auto upper = coefficients(wrapper, "m", pub.q, linalg::triangle_size(pub.k));
    pub.matrices.push_back(linalg::matricize(f, std::span<const Coeff>(upper)));
  }
  if (doc.contains("P_R")) pub.p_r = coefficients(doc, "P_R", pub.q, pub.k + 1);
  return pub;
}

PrivateKey private_key_from_json(std::string_view text) {
  const Json doc = parse(text);
  check_schema(doc);
  const std::uint32_t q = read_q(doc);
  const std::size_t k = read_k(doc);
  auto modulus_k = coefficients(doc, "modulusK", q, k + 1);
  auto b = coefficients(doc, "b", q, k);
  auto c = coefficients(doc, "c", q, k);
  auto space = space::SidonSpace::from_parameters(q, std::move(modulus_k), std::move(b), std::move(c));
  Matrix a = square(q, doc, "A", k);
  Matrix e = square(q, doc, "E", 2 * k);
  auto p_r = coefficients(doc, "P_R", q, k + 1);
  return PrivateKey(std::move(space), std::move(a), std::move(e), std::move(p_r));
}

Ciphertext ciphertext_from_json(std::string_view text) {
  const Json doc = parse(text);
  check_schema(doc);
  Ciphertext ct;
  ct.q = read_q(doc);
  const auto n = field<std::size_t>(doc, "n");
  ct.ct = coefficients(doc, "ct", ct.q, n);
  return ct;
}

Matrix matrix_from_json(std::string_view text, std::uint32_t* q_out) {
  const Json doc = parse(text);
  const std::uint32_t q = read_q(doc);
  const auto rows = field<std::size_t>(doc, "rows");
  const auto cols = field<std::size_t>(doc, "cols");
  if (q_out) *q_out = q;
  return Matrix(rows, cols, coefficients(doc, "data", q, rows * cols));
}

}  // namespace sidon::crypto
