#pragma once

#include <string>
#include <string_view>

#include "sidon/crypto/keys.hpp"

// JSON documents, fields in fixed order, integers in decimal:
//   public key   {schema, q, k, n, matrices: [upper triangles, row-major], P_R?}
//   private key  {schema, q, k, modulusK, b, c, A, E, P_R}   (A, E row-major)
//   ciphertext   {schema, q, n, ct}
//   matrix       {rows, cols, q, data}                        (row-major)
// Parsers throw InputError on malformed documents and ParameterError on
// parameters the scheme rejects.

namespace sidon::crypto {

struct Ciphertext {
  std::uint32_t q = 0;
  Vector ct;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

std::string to_json(const PublicKey& pub);
std::string to_json(const PrivateKey& priv);
std::string to_json(const Ciphertext& ct);
std::string matrix_to_json(std::uint32_t q, const Matrix& m);

PublicKey public_key_from_json(std::string_view text);
PrivateKey private_key_from_json(std::string_view text);
Ciphertext ciphertext_from_json(std::string_view text);
Matrix matrix_from_json(std::string_view text, std::uint32_t* q_out = nullptr);

}  // namespace sidon::crypto
