#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sxrc/cost_ledger.hpp"
#include "sxrc/mbr.hpp"
#include "sxrc/msr.hpp"
#include "sxrc/store.hpp"

namespace sxrc {

// End-to-end sessions against a DistributedStore. Transfers and XORs land on
// the ledger; aux_seq_bytes_peak records the sequence storage the decoder or
// repairer allocated beyond the retrieved data and its own output.

struct HarnessOptions {
  std::size_t jobs = 1;
  BackSubstitution mode = BackSubstitution::kBitSerial;
};

[[nodiscard]] std::vector<BitSeq> harness_mbr_decode(const DistributedStore& store, const MbrCode& code,
                                                     std::span<const std::size_t> nodes, CostLedger& ledger,
                                                     const HarnessOptions& options = {});
[[nodiscard]] NodeShare harness_mbr_repair(const DistributedStore& store, const MbrCode& code,
                                           std::size_t failed, std::span<const std::size_t> helpers,
                                           CostLedger& ledger, const HarnessOptions& options = {});

[[nodiscard]] std::vector<BitSeq> harness_msr_decode(const DistributedStore& store, const MsrCode& code,
                                                     std::span<const std::size_t> nodes, CostLedger& ledger,
                                                     const HarnessOptions& options = {});
[[nodiscard]] NodeShare harness_msr_repair(const DistributedStore& store, const MsrCode& code,
                                           std::size_t failed, std::span<const std::size_t> helpers,
                                           CostLedger& ledger);

/// Storage bytes of a set of sequences as the allocator sees them.
[[nodiscard]] std::uint64_t seq_storage_bytes(std::span<const BitSeq> seqs) noexcept;

}  // namespace sxrc
