#pragma once

#include <set>

#include "sidon/crypto/codec.hpp"
#include "sidon/crypto/keys.hpp"

namespace sidon::attacks {

/// Every message class (a, b) with a M^(i) b^T = ct_i for all i, found by
/// running over projective a (first nonzero entry 1) and solving the
/// resulting n x k linear system in b: (q^k - 1)/(q - 1) eliminations.
/// Throws CapacityError beyond 2^20 candidates.
std::set<crypto::MessageClass> bilinear_bruteforce(const crypto::PublicKey& pub, const crypto::Vector& ct);

}  // namespace sidon::attacks
