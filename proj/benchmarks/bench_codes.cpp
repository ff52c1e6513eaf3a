#include <benchmark/benchmark.h>

#include <random>

#include "sxrc/harness.hpp"

namespace {

std::vector<sxrc::BitSeq> message(std::size_t count, std::size_t len) {
  std::mt19937_64 rng(count * 131 + len);
  std::vector<sxrc::BitSeq> m(count, sxrc::BitSeq(len));
  for (auto& s : m) {
    for (std::size_t l = 1; l <= len; ++l) s.set(l, rng() & 1U);
  }
  return m;
}

sxrc::DistributedStore mbr_store(const sxrc::MbrCode& code) {
  const auto msg = sxrc::MbrMessage::pack(message(code.message_count(), code.length()), code);
  std::vector<sxrc::NodeShare> shares;
  for (std::size_t i = 1; i <= code.n(); ++i) shares.push_back(sxrc::mbr_encode(msg, code, i));
  return {sxrc::CodeParams::of(code), std::move(shares)};
}

sxrc::DistributedStore msr_store(const sxrc::MsrCode& code) {
  const auto msg = sxrc::MsrMessage::pack(message(code.message_count(), code.length()), code);
  std::vector<sxrc::NodeShare> shares;
  for (std::size_t i = 1; i <= code.n(); ++i) shares.push_back(sxrc::msr_encode(msg, code, i));
  return {sxrc::CodeParams::of(code), std::move(shares)};
}

void BM_MbrDecode(benchmark::State& state) {
  const auto code = sxrc::MbrCode::vandermonde(6, 3, 4, static_cast<std::size_t>(state.range(0)));
  const auto store = mbr_store(code);
  const std::vector<std::size_t> nodes{6, 4, 2};
  for (auto _ : state) {
    sxrc::CostLedger ledger;
    benchmark::DoNotOptimize(sxrc::harness_mbr_decode(store, code, nodes, ledger,
                                                      {static_cast<std::size_t>(state.range(1)),
                                                       sxrc::BackSubstitution::kBitSerial}));
  }
}
BENCHMARK(BM_MbrDecode)->Args({1024, 1})->Args({16384, 1})->Args({16384, 4});

void BM_MbrRepair(benchmark::State& state) {
  const auto code = sxrc::MbrCode::vandermonde(6, 3, 4, static_cast<std::size_t>(state.range(0)));
  const auto store = mbr_store(code);
  const std::vector<std::size_t> helpers{5, 4, 2, 1};
  for (auto _ : state) {
    sxrc::CostLedger ledger;
    benchmark::DoNotOptimize(sxrc::harness_mbr_repair(store, code, 3, helpers, ledger));
  }
}
BENCHMARK(BM_MbrRepair)->Arg(1024)->Arg(16384);

void BM_MsrDecode(benchmark::State& state) {
  const auto code = sxrc::MsrCode::vandermonde(6, 3, static_cast<std::size_t>(state.range(0)));
  const auto store = msr_store(code);
  const std::vector<std::size_t> nodes{6, 4, 2};
  for (auto _ : state) {
    sxrc::CostLedger ledger;
    benchmark::DoNotOptimize(sxrc::harness_msr_decode(store, code, nodes, ledger,
                                                      {static_cast<std::size_t>(state.range(1)),
                                                       sxrc::BackSubstitution::kBitSerial}));
  }
}
BENCHMARK(BM_MsrDecode)->Args({1024, 1})->Args({16384, 1})->Args({16384, 4});

void BM_MsrRepair(benchmark::State& state) {
  const auto code = sxrc::MsrCode::vandermonde(6, 3, static_cast<std::size_t>(state.range(0)));
  const auto store = msr_store(code);
  const std::vector<std::size_t> helpers{5, 4, 2, 1};
  for (auto _ : state) {
    sxrc::CostLedger ledger;
    benchmark::DoNotOptimize(sxrc::harness_msr_repair(store, code, 3, helpers, ledger));
  }
}
BENCHMARK(BM_MsrRepair)->Arg(1024)->Arg(16384);

}  // namespace
