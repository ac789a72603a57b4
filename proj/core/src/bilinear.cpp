#include "sidon/attacks/bilinear.hpp"

#include <algorithm>

#include "sidon/error.hpp"

namespace sidon::attacks {

using crypto::Coeff;
using crypto::GFq;
using crypto::Matrix;
using crypto::Vector;

std::set<crypto::MessageClass> bilinear_bruteforce(const crypto::PublicKey& pub, const Vector& ct) {
  const std::size_t k = pub.k;
  const std::size_t n = pub.n;
  if (ct.size() != n) throw InputError("ciphertext must have n entries");
  const GFq f(pub.q);
  const BigInt points = (ipow(pub.q, k) - 1) / (pub.q - 1);
  if (points > BigInt(1) << 20) throw CapacityError("bilinear brute force is limited to 2^20 candidates");

  std::set<crypto::MessageClass> found;
  const auto count = static_cast<std::uint64_t>(points);
  for (std::uint64_t index = 0; index < count; ++index) {
    const Vector a = crypto::unrank_projective(pub.q, k, BigInt(index));
    // Row i of the system: a M^(i).
    Matrix system(n, k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < k; ++t) {
        Coeff acc = 0;
        for (std::size_t s = 0; s < k; ++s) acc = f.add(acc, f.mul(a[s], pub.matrices[i](s, t)));
        system(i, t) = acc;
      }
    }
    const linalg::GaussianElimination<GFq> elim(f, system);
    const auto particular = elim.solve(ct);
    if (!particular) continue;
    const auto kernel = elim.kernel_basis();
    // For a genuine public key the map b -> a M b^T is injective, so the
    // kernel is trivial; the general case is still enumerated.
    if (ipow(pub.q, kernel.size()) > BigInt(1) << 16) throw CapacityError("solution space too large to enumerate");
    std::vector<Coeff> combo(kernel.size(), 0);
    for (;;) {
      Vector b = *particular;
      for (std::size_t c = 0; c < kernel.size(); ++c) {
        for (std::size_t t = 0; t < k; ++t) b[t] = f.add(b[t], f.mul(combo[c], kernel[c][t]));
      }
      if (std::any_of(b.begin(), b.end(), [](Coeff x) { return x != 0; })) found.insert(crypto::canonicalize(pub.q, a, b));
      std::size_t pos = 0;
      while (pos < combo.size() && ++combo[pos] == pub.q) combo[pos++] = 0;
      if (pos == combo.size()) break;
    }
  }
  return found;
}

}  // namespace sidon::attacks
