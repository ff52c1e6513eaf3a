#include "sxrc/bitseq.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sxrc/errors.hpp"

namespace sxrc {
namespace {

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + BitSeq::kWordBits - 1) / BitSeq::kWordBits;
}

// Mask with bits [lo, hi) set, 0 <= lo < hi <= 64.
constexpr BitSeq::Word range_mask(std::size_t lo, std::size_t hi) noexcept {
  const BitSeq::Word upper = hi == 64 ? ~BitSeq::Word{0} : ((BitSeq::Word{1} << hi) - 1);
  const BitSeq::Word lower = (BitSeq::Word{1} << lo) - 1;
  return upper & ~lower;
}

}  // namespace

BitSeq::BitSeq(std::size_t len_bits) : len_bits_(len_bits), words_(words_for(len_bits), 0) {}

BitSeq BitSeq::from_string(std::string_view bits) {
  BitSeq out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    } else if (bits[i] != '0') {
      throw ParameterError("bit string may contain only '0' and '1'");
    }
  }
  return out;
}

BitSeq BitSeq::from_bytes(std::span<const std::uint8_t> bytes, std::size_t len_bits) {
  if (bytes.size() * 8 < len_bits) {
    throw FormatError("byte buffer shorter than declared bit length");
  }
  BitSeq out(len_bits);
  const auto nbytes = (len_bits + 7) / 8;
  for (std::size_t i = 0; i < nbytes; ++i) {
    out.words_[i / 8] |= Word{bytes[i]} << (8 * (i % 8));
  }
  out.clear_padding();
  return out;
}

std::string BitSeq::to_string() const {
  std::string s(len_bits_, '0');
  for (std::size_t p = 1; p <= len_bits_; ++p) {
    if (get(p)) s[p - 1] = '1';
  }
  return s;
}

std::vector<std::uint8_t> BitSeq::to_bytes() const {
  std::vector<std::uint8_t> out((len_bits_ + 7) / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

void BitSeq::set(std::size_t pos, bool value) {
  if (pos == 0 || pos > len_bits_) {
    throw ContractError("BitSeq::set position out of range");
  }
  const auto b = pos - 1;
  const Word m = Word{1} << (b % kWordBits);
  if (value) {
    words_[b / kWordBits] |= m;
  } else {
    words_[b / kWordBits] &= ~m;
  }
}

void BitSeq::xor_bit(std::size_t pos, bool value) {
  if (pos == 0 || pos > len_bits_) {
    throw ContractError("BitSeq::xor_bit position out of range");
  }
  const auto b = pos - 1;
  words_[b / kWordBits] ^= Word{value} << (b % kWordBits);
}

BitSeq::Word BitSeq::word_at(std::size_t first) const noexcept {
  const auto w = first / kWordBits;
  const auto sh = first % kWordBits;
  if (w >= words_.size()) return 0;
  Word v = words_[w] >> sh;
  if (sh != 0 && w + 1 < words_.size()) v |= words_[w + 1] << (kWordBits - sh);
  return v;
}

void BitSeq::resize(std::size_t len_bits) {
  words_.resize(words_for(len_bits), 0);
  len_bits_ = len_bits;
  clear_padding();
}

void BitSeq::narrow(std::size_t from, std::size_t to) {
  if (from == 0) throw ContractError("BitSeq::narrow: positions are 1-based");
  const std::size_t new_len = to >= from ? to - from + 1 : 0;
  if (new_len > len_bits_) {
    *this = subseq(*this, from, static_cast<std::ptrdiff_t>(to));
    return;
  }
  const auto nw = words_for(new_len);
  // Word w reads source words >= w, so a forward pass never clobbers input.
  for (std::size_t w = 0; w < nw; ++w) {
    words_[w] = word_at(from - 1 + w * kWordBits);
  }
  words_.resize(nw);
  len_bits_ = new_len;
  clear_padding();
}

bool BitSeq::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitSeq::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitSeq::padding_is_canonical() const noexcept {
  if (words_.size() != words_for(len_bits_)) return false;
  const auto tail = len_bits_ % kWordBits;
  if (tail == 0 || words_.empty()) return true;
  return (words_.back() & ~range_mask(0, tail)) == 0;
}

void BitSeq::clear_padding() noexcept {
  const auto tail = len_bits_ % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= range_mask(0, tail);
}

BitSeq shift_pad(const BitSeq& a, std::size_t t) {
  BitSeq out(a.size() + t);
  if (!a.empty()) xor_into(out, t, a, 1, a.size());
  return out;
}

BitSeq add(const BitSeq& a, const BitSeq& b) {
  const BitSeq& longer = a.size() >= b.size() ? a : b;
  const BitSeq& shorter = a.size() >= b.size() ? b : a;
  BitSeq out = longer;
  if (!shorter.empty()) xor_into(out, 0, shorter, 1, shorter.size());
  return out;
}

BitSeq subseq(const BitSeq& a, std::size_t from, std::ptrdiff_t to) {
  if (from == 0) throw ContractError("subseq: positions are 1-based");
  const auto signed_from = static_cast<std::ptrdiff_t>(from);
  if (to < signed_from) return BitSeq{};
  const auto len = static_cast<std::size_t>(to - signed_from + 1);
  BitSeq out(len);
  if (from <= a.size()) {
    const auto avail = std::min(len, a.size() - from + 1);
    xor_into(out, 0, a, from, avail);
  }
  return out;
}

void xor_into(BitSeq& dst, std::size_t dst_offset, const BitSeq& src, std::size_t src_from,
              std::size_t count, CostLedger* ledger) {
  if (count == 0) return;
  if (dst_offset + count > dst.size()) {
    throw ContractError("xor_into: destination range exceeds sequence length");
  }
  if (src_from == 0 || src_from + count - 1 > src.size()) {
    throw ContractError("xor_into: source range exceeds sequence length");
  }
  if (&dst == &src) {
    throw ContractError("xor_into: source and destination must be distinct");
  }
  constexpr auto W = BitSeq::kWordBits;
  const std::size_t d0 = dst_offset;
  const std::size_t d1 = dst_offset + count;
  const std::size_t s0 = src_from - 1;
  const std::size_t w_first = d0 / W;
  const std::size_t w_last = (d1 - 1) / W;
  for (std::size_t w = w_first; w <= w_last; ++w) {
    const std::size_t lo = std::max(d0, w * W) - w * W;
    const std::size_t hi = std::min(d1, w * W + W) - w * W;
    // Source bit aligned with bit 0 of destination word w.
    const auto start = static_cast<std::ptrdiff_t>(w * W + s0) - static_cast<std::ptrdiff_t>(d0);
    BitSeq::Word v =
        start >= 0 ? src.word_at(static_cast<std::size_t>(start)) : src.word_at(0) << static_cast<unsigned>(-start);
    dst.words_[w] ^= v & range_mask(lo, hi);
  }
  if (ledger != nullptr) ledger->add_xor(count, w_last - w_first + 1);
}

void xor_shifted(BitSeq& dst, const BitSeq& src, std::ptrdiff_t delta, CostLedger* ledger) {
  const auto lo = std::max<std::ptrdiff_t>(1, 1 + delta);
  const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(dst.size()),
                                           static_cast<std::ptrdiff_t>(src.size()) + delta);
  if (hi < lo) return;
  xor_into(dst, static_cast<std::size_t>(lo - 1), src, static_cast<std::size_t>(lo - delta),
           static_cast<std::size_t>(hi - lo + 1), ledger);
}

namespace detail {

void xor_into_bitwise(BitSeq& dst, std::size_t dst_offset, const BitSeq& src, std::size_t src_from,
                      std::size_t count) {
  if (count == 0) return;
  if (dst_offset + count > dst.size() || src_from == 0 || src_from + count - 1 > src.size()) {
    throw ContractError("xor_into_bitwise: range exceeds sequence length");
  }
  for (std::size_t j = 1; j <= count; ++j) {
    dst.xor_bit(dst_offset + j, src.get(src_from + j - 1));
  }
}

}  // namespace detail
}  // namespace sxrc
