#include <benchmark/benchmark.h>

#include <random>

#include "sxrc/solver.hpp"

namespace {

struct Fixture {
  sxrc::ShiftMatrix exps;
  std::vector<sxrc::BitSeq> y;
};

Fixture make(std::size_t k, std::size_t len) {
  std::mt19937_64 rng(k * 31 + len);
  std::vector<sxrc::BitSeq> x(k, sxrc::BitSeq(len));
  for (auto& s : x) {
    for (std::size_t l = 1; l <= len; ++l) s.set(l, rng() & 1U);
  }
  auto exps = sxrc::vandermonde(k, k);
  auto y = sxrc::encode_system(x, exps);
  return {std::move(exps), std::move(y)};
}

void run_elimination(benchmark::State& state, sxrc::BackSubstitution mode) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto len = static_cast<std::size_t>(state.range(1));
  const auto f = make(k, len);
  for (auto _ : state) {
    state.PauseTiming();
    auto xhat = sxrc::select_subsequences(f.y, f.exps, len);
    std::vector<sxrc::BitSeq*> ptrs;
    for (auto& s : xhat) ptrs.push_back(&s);
    state.ResumeTiming();
    sxrc::shift_xor_eliminate(f.exps, len, ptrs, nullptr, {mode, nullptr});
    benchmark::DoNotOptimize(xhat);
  }
}

void BM_EliminateBitSerial(benchmark::State& state) { run_elimination(state, sxrc::BackSubstitution::kBitSerial); }
void BM_EliminateWordBatched(benchmark::State& state) {
  run_elimination(state, sxrc::BackSubstitution::kWordBatched);
}

void BM_Zigzag(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto len = static_cast<std::size_t>(state.range(1));
  const auto f = make(k, len);
  for (auto _ : state) benchmark::DoNotOptimize(sxrc::zigzag_solve(f.y, f.exps, len));
}

void grid(benchmark::internal::Benchmark* b) {
  for (int k : {2, 3, 4, 6}) {
    for (int len : {1024, 16384}) b->Args({k, len});
  }
}

BENCHMARK(BM_EliminateBitSerial)->Apply(grid);
BENCHMARK(BM_EliminateWordBatched)->Apply(grid);
BENCHMARK(BM_Zigzag)->Apply(grid);

}  // namespace
