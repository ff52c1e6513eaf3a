#include "sxrc/bounds.hpp"

namespace sxrc::bounds {

std::uint64_t mbr_decode_bandwidth(const MbrCode& code) {
  return static_cast<std::uint64_t>(code.message_count()) * code.length();
}

std::uint64_t mbr_repair_bandwidth(const MbrCode& code, std::size_t failed) {
  return static_cast<std::uint64_t>(code.d()) * code.share_seq_length(failed);
}

std::uint64_t msr_decode_bandwidth(const MsrCode& code, std::span<const std::size_t> nodes) {
  std::uint64_t total = 0;
  for (auto i : nodes) total += static_cast<std::uint64_t>(code.alpha()) * code.share_seq_length(i);
  return total;
}

std::uint64_t msr_repair_bandwidth(const MsrCode& code, std::size_t failed) {
  return static_cast<std::uint64_t>(code.d()) * (code.length() + code.phi()(failed, code.alpha()));
}

double elimination_xor_bound(std::size_t k, std::size_t length) {
  return static_cast<double>(k) * static_cast<double>(k - 1) * static_cast<double>(length);
}

double zigzag_xor_reference(std::size_t k, std::size_t length) {
  return static_cast<double>(k) * static_cast<double>(k + 1) * static_cast<double>(length);
}

double mbr_decode_xor_bound(std::size_t k, std::size_t d, std::size_t length) {
  const auto kk = static_cast<double>(k);
  const auto dd = static_cast<double>(d);
  return ((1.5 * dd - kk) * kk - (dd - kk + 1) / 2) * kk * static_cast<double>(length);
}

double mbr_repair_xor_bound(const MbrCode& code, std::size_t failed) {
  const auto d = static_cast<double>(code.d());
  return 2 * d * (d - 1) * static_cast<double>(code.share_seq_length(failed));
}

double msr_decode_xor_slope(std::size_t k) {
  const auto kk = static_cast<double>(k);
  return (kk - 1) * (kk - 1) * (5 * kk - 8);
}

double msr_repair_xor_slope(std::size_t d) {
  const auto dd = static_cast<double>(d);
  return 1.5 * dd * (dd - 1);
}

double msr_decode_xor_bound(const MsrCode& code) {
  const auto n = static_cast<double>(code.n());
  const auto k = static_cast<double>(code.k());
  const auto d = static_cast<double>(code.d());
  return msr_decode_xor_slope(code.k()) * static_cast<double>(code.length()) + kMsrOverheadConstant * n * k * k * k * d;
}

double msr_repair_xor_bound(const MsrCode& code) {
  const auto n = static_cast<double>(code.n());
  const auto d = static_cast<double>(code.d());
  return msr_repair_xor_slope(code.d()) * static_cast<double>(code.length()) + kMsrOverheadConstant * n * d * d * d;
}

double msr_decode_aux_bound_bits(const MsrCode& code) {
  const auto a = static_cast<double>(code.alpha());
  return 2 * a * a *
         (static_cast<double>(code.length()) + 32.0 * static_cast<double>(code.n()) * static_cast<double>(code.d()));
}

}  // namespace sxrc::bounds
