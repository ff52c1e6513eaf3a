#pragma once

#include <atomic>
#include <cstdint>

namespace sxrc {

struct CostSnapshot {
  std::uint64_t bits_transferred = 0;
  std::uint64_t xor_bit_ops = 0;
  std::uint64_t xor_word_ops = 0;
  std::uint64_t integer_ops = 0;
  std::uint64_t aux_seq_bytes_peak = 0;
  std::uint64_t aux_integers_peak = 0;

  friend bool operator==(const CostSnapshot&, const CostSnapshot&) = default;
};

// Counters for one metered session. Every XOR, every transmitted bit and every
// bookkeeping integer operation of the decode/repair paths lands here.
// Increments are atomic so parallel column/pair solves can share one ledger.
class CostLedger {
 public:
  CostLedger() = default;
  CostLedger(const CostLedger&) = delete;
  CostLedger& operator=(const CostLedger&) = delete;

  void add_transfer(std::uint64_t bits) noexcept { relaxed_add(bits_transferred_, bits); }
  void add_xor(std::uint64_t bits, std::uint64_t words) noexcept {
    relaxed_add(xor_bit_ops_, bits);
    relaxed_add(xor_word_ops_, words);
  }
  void add_integer_ops(std::uint64_t n) noexcept { relaxed_add(integer_ops_, n); }
  void note_aux_seq_bytes(std::uint64_t bytes) noexcept { relaxed_max(aux_seq_bytes_peak_, bytes); }
  void note_aux_integers(std::uint64_t count) noexcept { relaxed_max(aux_integers_peak_, count); }

  [[nodiscard]] CostSnapshot snapshot() const noexcept {
    return {bits_transferred_.load(std::memory_order_relaxed),
            xor_bit_ops_.load(std::memory_order_relaxed),
            xor_word_ops_.load(std::memory_order_relaxed),
            integer_ops_.load(std::memory_order_relaxed),
            aux_seq_bytes_peak_.load(std::memory_order_relaxed),
            aux_integers_peak_.load(std::memory_order_relaxed)};
  }

  // Only between sessions; counters are otherwise monotone.
  void reset() noexcept {
    for (auto* c : {&bits_transferred_, &xor_bit_ops_, &xor_word_ops_, &integer_ops_,
                    &aux_seq_bytes_peak_, &aux_integers_peak_}) {
      c->store(0, std::memory_order_relaxed);
    }
  }

 private:
  static void relaxed_add(std::atomic<std::uint64_t>& c, std::uint64_t v) noexcept {
    c.fetch_add(v, std::memory_order_relaxed);
  }
  static void relaxed_max(std::atomic<std::uint64_t>& c, std::uint64_t v) noexcept {
    auto cur = c.load(std::memory_order_relaxed);
    while (cur < v && !c.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }

  std::atomic<std::uint64_t> bits_transferred_{0};
  std::atomic<std::uint64_t> xor_bit_ops_{0};
  std::atomic<std::uint64_t> xor_word_ops_{0};
  std::atomic<std::uint64_t> integer_ops_{0};
  std::atomic<std::uint64_t> aux_seq_bytes_peak_{0};
  std::atomic<std::uint64_t> aux_integers_peak_{0};
};

inline CostSnapshot operator-(const CostSnapshot& a, const CostSnapshot& b) noexcept {
  return {a.bits_transferred - b.bits_transferred, a.xor_bit_ops - b.xor_bit_ops,
          a.xor_word_ops - b.xor_word_ops,         a.integer_ops - b.integer_ops,
          a.aux_seq_bytes_peak,                    a.aux_integers_peak};
}

}  // namespace sxrc
