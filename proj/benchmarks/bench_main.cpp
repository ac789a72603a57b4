#include <benchmark/benchmark.h>

#include "sidon/attacks/bilinear.hpp"
#include "sidon/attacks/minors.hpp"
#include "sidon/crypto/cipher.hpp"
#include "sidon/crypto/codec.hpp"
#include "sidon/crypto/keys.hpp"

namespace {

using namespace sidon;

// Arguments: q, k. Each iteration draws a fresh key.
void BM_Keygen(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  SplitMix64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::keygen(q, k, rng));
}
BENCHMARK(BM_Keygen)
    ->ArgsProduct({{5, 53, 541}, {5, 10, 20, 40}})
    ->Unit(benchmark::kMillisecond);

void BM_Encrypt(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(2);
  const auto keys = crypto::keygen(53, k, rng);
  const auto msg = crypto::encode_message(53, k, 12345);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::encrypt(keys.pub, msg));
}
BENCHMARK(BM_Encrypt)->Arg(5)->Arg(10)->Arg(20);

void BM_Decrypt(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(3);
  const auto keys = crypto::keygen(53, k, rng);
  const auto ct = crypto::encrypt(keys.pub, crypto::encode_message(53, k, 12345));
  for (auto _ : state) benchmark::DoNotOptimize(crypto::decrypt(keys.priv, ct));
}
BENCHMARK(BM_Decrypt)->Arg(5)->Arg(10)->Arg(20);

// Exhaustive bilinear solver at q = 3.
void BM_Bilinear(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(4);
  const auto keys = crypto::keygen(3, k, rng);
  const auto ct = crypto::encrypt(keys.pub, crypto::encode_message(3, k, 7));
  for (auto _ : state) benchmark::DoNotOptimize(attacks::bilinear_bruteforce(keys.pub, ct));
}
BENCHMARK(BM_Bilinear)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_OmegaLinRank(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(5);
  const auto keys = crypto::keygen(3, k, rng);
  const crypto::GFq f(3);
  for (auto _ : state) {
    const auto omega = attacks::build_omega_lin(keys.pub);
    benchmark::DoNotOptimize(linalg::rank(f, omega.matrix));
  }
}
BENCHMARK(BM_OmegaLinRank)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
