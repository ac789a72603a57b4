#pragma once

#include <span>

#include "sidon/crypto/codec.hpp"
#include "sidon/crypto/keys.hpp"

namespace sidon::crypto {

/// ct_i = a M^(i) b^T.
Vector encrypt(const PublicKey& pub, std::span<const Coeff> a, std::span<const Coeff> b);
Vector encrypt(const PublicKey& pub, const MessageClass& msg);

/// Canonical class of the plaintext. Throws DecryptionFailure when ct is not
/// the encryption of any rank-one message.
MessageClass decrypt(const PrivateKey& priv, std::span<const Coeff> ct);

// Randomized variant: the plaintext is a single nonzero a in F_q^k, read as
// an element of F_R = F_q[x]/(P_R). A random nonzero b is drawn and the pair
// (a/b, b) is encrypted; the product of the decrypted pair in F_R returns a
// exactly, whatever scalar and order the factorization produced.

Vector randomized_encrypt(const PublicKey& pub, std::span<const Coeff> a, SplitMix64& rng);
/// Same with a caller-chosen nonzero b.
Vector randomized_encrypt_with(const PublicKey& pub, std::span<const Coeff> a, std::span<const Coeff> b);
Vector randomized_decrypt(const PrivateKey& priv, std::span<const Coeff> ct);

}  // namespace sidon::crypto
