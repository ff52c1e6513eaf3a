#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cli.hpp"
#include "report.hpp"
#include "sxrc/share_file.hpp"
#include "sxrc/store.hpp"

namespace sxrc::cli {

// Each command throws the library's error types; run() maps them to exit codes.
int cmd_encode(const CliConfig& cfg, std::ostream& out);
int cmd_decode(const CliConfig& cfg, std::ostream& out);
int cmd_repair(const CliConfig& cfg, std::ostream& out);
int cmd_solve(const CliConfig& cfg, std::ostream& out);
int cmd_bench(const CliConfig& cfg, bool code_given, std::ostream& out);

// Shared by the commands and the bench grid.

/// Code parameters from the config; `length` overrides cfg.len_bits.
[[nodiscard]] CodeParams make_params(const CliConfig& cfg, std::size_t length);
/// The LSB-first bit stream of `bytes` cut into `count` sequences of `length`
/// bits, zero padded at the end.
[[nodiscard]] std::vector<BitSeq> split_message(std::span<const std::uint8_t> bytes, std::size_t count,
                                                std::size_t length);
[[nodiscard]] std::vector<std::uint8_t> join_message(std::span<const BitSeq> seqs, std::size_t byte_count);
[[nodiscard]] std::vector<NodeShare> encode_all(const CodeParams& params, std::vector<BitSeq> msgs);

[[nodiscard]] Report measure_decode(const DistributedStore& store, std::span<const std::size_t> nodes,
                                    std::size_t jobs, std::vector<BitSeq>* message);
[[nodiscard]] Report measure_repair(const DistributedStore& store, std::size_t failed,
                                    std::span<const std::size_t> helpers, NodeShare* share);

}  // namespace sxrc::cli
