#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sxrc/mbr.hpp"
#include "sxrc/msr.hpp"
#include "sxrc/share.hpp"
#include "sxrc/shift_matrix.hpp"

namespace sxrc {

enum class CodeKind : std::uint8_t { kMbr = 1, kMsr = 2 };

[[nodiscard]] std::string to_string(CodeKind kind);
[[nodiscard]] CodeKind parse_code_kind(std::string_view text);

/// Code parameters as persisted: the exponent matrix is Psi (n x d) for MBR
/// and Phi (n x alpha) for MSR; lambda is empty for MBR.
struct CodeParams {
  CodeKind kind = CodeKind::kMbr;
  std::size_t n = 0, k = 0, d = 0, length = 0;
  ShiftMatrix exponents;
  std::vector<Exponent> lambda;

  static CodeParams of(const MbrCode& code);
  static CodeParams of(const MsrCode& code);
  // Validates and builds the code object; ParameterError on inconsistency.
  [[nodiscard]] MbrCode mbr() const;
  [[nodiscard]] MsrCode msr() const;
  [[nodiscard]] std::size_t alpha() const noexcept { return kind == CodeKind::kMbr ? d : k - 1; }
  [[nodiscard]] std::size_t message_count() const noexcept;
  [[nodiscard]] std::size_t share_seq_length(std::size_t node) const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// The SXOR layout: "SXOR", version u16, kind u8, n k d L u32, exponent
/// matrix u32 row-major, lambda u32 x n (MSR only), node u32, then per
/// sequence a u64 bit length and its bytes. Integers are little-endian.
[[nodiscard]] std::vector<std::uint8_t> serialize_share(const NodeShare& share, const CodeParams& params);

struct ShareFile {
  CodeParams params;
  NodeShare share;
};
/// Throws FormatError on malformed input.
[[nodiscard]] ShareFile parse_share(std::span<const std::uint8_t> bytes);

[[nodiscard]] std::filesystem::path share_path(const std::filesystem::path& dir, std::size_t node);
/// Writes dir/node_<i>.sxr and returns the file digest. Throws FormatError on I/O failure.
std::uint64_t write_share(const NodeShare& share, const CodeParams& params, const std::filesystem::path& dir);
[[nodiscard]] ShareFile read_share(const std::filesystem::path& file);
[[nodiscard]] std::uint64_t file_digest(const std::filesystem::path& file);

/// Flat key=value description of an encoded store.
struct StoreManifest {
  CodeParams params;
  std::uint64_t message_bytes = 0;  // original input size; decode truncates to it
  std::map<std::size_t, std::uint64_t> digests;

  [[nodiscard]] std::string to_text() const;
  static StoreManifest from_text(std::string_view text);

  static constexpr const char* kFileName = "manifest.txt";
  void write(const std::filesystem::path& dir) const;
  static StoreManifest read(const std::filesystem::path& dir);
};

}  // namespace sxrc
