#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sxrc/mbr.hpp"
#include "sxrc/msr.hpp"

namespace sxrc::bounds {

// Closed-form bandwidth figures (bits) and XOR-count bounds.

[[nodiscard]] std::uint64_t mbr_decode_bandwidth(const MbrCode& code);
[[nodiscard]] std::uint64_t mbr_repair_bandwidth(const MbrCode& code, std::size_t failed);
[[nodiscard]] std::uint64_t msr_decode_bandwidth(const MsrCode& code, std::span<const std::size_t> nodes);
[[nodiscard]] std::uint64_t msr_repair_bandwidth(const MsrCode& code, std::size_t failed);

// k(k-1)L: strict upper bound on one k x k elimination (k >= 2).
[[nodiscard]] double elimination_xor_bound(std::size_t k, std::size_t length);
// k(k+1)L: the zigzag reference figure.
[[nodiscard]] double zigzag_xor_reference(std::size_t k, std::size_t length);
// ((3/2 d - k) k - (d - k + 1)/2) k L.
[[nodiscard]] double mbr_decode_xor_bound(std::size_t k, std::size_t d, std::size_t length);
// 2 d (d-1) (L + t(i,d)), helpers and repairer together.
[[nodiscard]] double mbr_repair_xor_bound(const MbrCode& code, std::size_t failed);
// L-coefficients of the MSR operation counts.
[[nodiscard]] double msr_decode_xor_slope(std::size_t k);
[[nodiscard]] double msr_repair_xor_slope(std::size_t d);
// Overhead constant C of the MSR bounds below; the counts exceed their
// L-proportional part by at most C times the stated polynomial.
inline constexpr double kMsrOverheadConstant = 1.0;
// (k-1)^2 (5k-8) L + C n k^3 d.
[[nodiscard]] double msr_decode_xor_bound(const MsrCode& code);
// (3/2) d (d-1) L + C n d^3.
[[nodiscard]] double msr_repair_xor_bound(const MsrCode& code);
// 2 alpha^2 (L + 32 n d) bits.
[[nodiscard]] double msr_decode_aux_bound_bits(const MsrCode& code);

}  // namespace sxrc::bounds
