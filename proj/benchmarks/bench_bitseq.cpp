#include <benchmark/benchmark.h>

#include <random>

#include "sxrc/bitseq.hpp"

namespace {

sxrc::BitSeq noise(std::size_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  sxrc::BitSeq s(len);
  for (std::size_t l = 1; l <= len; ++l) s.set(l, rng() & 1U);
  return s;
}

// Unaligned word-level XOR of a run of `len` bits.
void BM_XorInto(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  auto dst = noise(len + 64, 1);
  const auto src = noise(len + 64, 2);
  for (auto _ : state) {
    sxrc::xor_into(dst, 3, src, 6, len, nullptr);
    benchmark::DoNotOptimize(dst);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(len / 8));
}
BENCHMARK(BM_XorInto)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_XorIntoBitwise(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  auto dst = noise(len + 64, 1);
  const auto src = noise(len + 64, 2);
  for (auto _ : state) {
    sxrc::detail::xor_into_bitwise(dst, 3, src, 6, len);
    benchmark::DoNotOptimize(dst);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(len / 8));
}
BENCHMARK(BM_XorIntoBitwise)->RangeMultiplier(8)->Range(64, 1 << 15);

}  // namespace
