#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sxrc/bitseq.hpp"
#include "sxrc/cost_ledger.hpp"
#include "sxrc/share.hpp"
#include "sxrc/share_file.hpp"

namespace sxrc {

/// Simulated node storage. Every bit that leaves a node goes through
/// fetch_subrange() or transmit() and is metered on the caller's ledger.
class DistributedStore {
 public:
  // Shares for nodes 1..n in any order; digests are taken from the canonical
  // file bytes so heal_node() can verify a repaired share.
  DistributedStore(CodeParams params, std::vector<NodeShare> shares);
  static DistributedStore load(const std::filesystem::path& dir, const StoreManifest& manifest);

  [[nodiscard]] const CodeParams& params() const noexcept { return params_; }
  [[nodiscard]] bool alive(std::size_t node) const;
  [[nodiscard]] std::vector<std::size_t> alive_nodes() const;

  // Bits from..to of stored sequence `seq`. Throws UnavailableError for a
  // failed node and ContractError for a range outside the stored sequence.
  [[nodiscard]] BitSeq fetch_subrange(std::size_t node, std::size_t seq, std::size_t from, std::size_t to,
                                      CostLedger& ledger) const;
  // Every stored sequence in full.
  [[nodiscard]] NodeShare fetch_share(std::size_t node, CostLedger& ledger) const;
  // The node's own view of its data, for helper-side computation. Unmetered.
  [[nodiscard]] const NodeShare& local_share(std::size_t node) const;
  // Meters a sequence computed at `from_node` and sent to the requester.
  void transmit(std::size_t from_node, const BitSeq& payload, CostLedger& ledger) const;

  void fail_node(std::size_t node);
  // Installs a repaired share; VerificationError if its digest differs from
  // the original one.
  void heal_node(NodeShare share);
  [[nodiscard]] std::uint64_t digest(std::size_t node) const;

 private:
  struct Slot {
    NodeShare share;
    std::uint64_t digest = 0;
    bool alive = true;
  };
  const Slot& slot(std::size_t node) const;
  Slot& slot(std::size_t node);
  void require_alive(const Slot& s) const;

  CodeParams params_;
  std::vector<Slot> slots_;
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

}  // namespace sxrc
