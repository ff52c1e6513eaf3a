#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sxrc/alloc_probe.hpp"
#include "sxrc/cost_ledger.hpp"

namespace sxrc {

/// A finite binary sequence with an explicit bit length.
///
/// Positions are 1-based: `get(1)` is the first bit. Reads outside `1..size()`
/// return 0, which is what makes zero-padded shifts and length-mismatched
/// additions compose without special cases. Writes outside the range are
/// contract errors.
///
/// Storage is packed into 64-bit words, bit position p living in word
/// (p-1)/64 at bit (p-1)%64 (least significant first). Bits past `size()` in
/// the last word are always zero, so whole-word XOR never leaks garbage.
class BitSeq {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitSeq() = default;
  explicit BitSeq(std::size_t len_bits);

  // "0110..." with the first character at position 1.
  static BitSeq from_string(std::string_view bits);
  // Little-endian-within-byte packing: bit p is bit (p-1)%8 of byte (p-1)/8.
  static BitSeq from_bytes(std::span<const std::uint8_t> bytes, std::size_t len_bits);

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;

  [[nodiscard]] std::size_t size() const noexcept { return len_bits_; }
  [[nodiscard]] bool empty() const noexcept { return len_bits_ == 0; }
  [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }
  [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

  [[nodiscard]] bool get(std::size_t pos) const noexcept {
    if (pos == 0 || pos > len_bits_) return false;
    const auto b = pos - 1;
    return (words_[b / kWordBits] >> (b % kWordBits)) & 1U;
  }
  void set(std::size_t pos, bool value);
  // In-place single-bit XOR; the unit operation of bit-serial back substitution.
  void xor_bit(std::size_t pos, bool value);

  // 64 bits starting at 0-based bit `first`; positions past the end read 0.
  [[nodiscard]] Word word_at(std::size_t first) const noexcept;

  // Zero-extends or truncates, keeping canonical padding.
  void resize(std::size_t len_bits);
  // Replaces *this with subseq(*this, from, to) without allocating when the
  // result is no longer than the current length.
  void narrow(std::size_t from, std::size_t to);

  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] std::size_t popcount() const noexcept;
  // True when the padding invariant holds (bits beyond size() are zero).
  [[nodiscard]] bool padding_is_canonical() const noexcept;

  friend bool operator==(const BitSeq& a, const BitSeq& b) noexcept {
    return a.len_bits_ == b.len_bits_ && a.words_ == b.words_;
  }

 private:
  friend void xor_into(BitSeq&, std::size_t, const BitSeq&, std::size_t, std::size_t, CostLedger*);
  void clear_padding() noexcept;

  std::size_t len_bits_ = 0;
  std::vector<Word, detail::TrackedAllocator<Word>> words_;
};

/// z^t a: t zero bits in front of a.
[[nodiscard]] BitSeq shift_pad(const BitSeq& a, std::size_t t);

/// Bitwise XOR; the shorter operand reads as zero past its end.
[[nodiscard]] BitSeq add(const BitSeq& a, const BitSeq& b);
[[nodiscard]] inline BitSeq operator+(const BitSeq& a, const BitSeq& b) { return add(a, b); }

/// a[from:to]; positions past a's end read 0; an empty range (to < from)
/// gives the empty sequence.
[[nodiscard]] BitSeq subseq(const BitSeq& a, std::size_t from, std::ptrdiff_t to);

/// dst[dst_offset + j] ^= src[src_from + j - 1] for j = 1..count.
///
/// Word-level fetch/shift/mask, no scratch buffers. Both ranges must lie inside
/// their sequences and dst, src must be distinct objects. Counts `count` bit
/// XORs and the number of destination words touched.
void xor_into(BitSeq& dst, std::size_t dst_offset, const BitSeq& src, std::size_t src_from,
              std::size_t count, CostLedger* ledger = nullptr);

/// dst[l] ^= src[l - delta] for every l in 1..dst.size() where the source
/// position is inside src. This is "add z^delta src" restricted to a window,
/// and delta may be negative. Only the overlapping bits are XORed (and counted).
void xor_shifted(BitSeq& dst, const BitSeq& src, std::ptrdiff_t delta, CostLedger* ledger = nullptr);

namespace detail {
// Bit-at-a-time reference for xor_into, kept as a differential oracle.
void xor_into_bitwise(BitSeq& dst, std::size_t dst_offset, const BitSeq& src, std::size_t src_from,
                      std::size_t count);
}  // namespace detail

}  // namespace sxrc
