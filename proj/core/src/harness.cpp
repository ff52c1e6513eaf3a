#include "sxrc/harness.hpp"

#include <algorithm>

#include "sxrc/alloc_probe.hpp"
#include "sxrc/errors.hpp"

namespace sxrc {
namespace {

DescendingNodes require_count(std::span<const std::size_t> ids, std::size_t count, const char* what) {
  DescendingNodes nodes(std::vector<std::size_t>(ids.begin(), ids.end()));
  if (nodes.size() < count) throw UnavailableError(std::string("not enough ") + what);
  if (nodes.size() > count) throw ParameterError(std::string("too many ") + what);
  return nodes;
}

void note_aux(CostLedger& ledger, const SeqAllocProbe& probe, std::uint64_t output_bytes) {
  const auto peak = std::max<std::int64_t>(probe.peak_delta_bytes(), 0);
  const auto aux = static_cast<std::uint64_t>(peak) > output_bytes ? static_cast<std::uint64_t>(peak) - output_bytes : 0;
  ledger.note_aux_seq_bytes(aux);
}

}  // namespace

std::uint64_t seq_storage_bytes(std::span<const BitSeq> seqs) noexcept {
  std::uint64_t total = 0;
  for (const auto& s : seqs) total += s.word_count() * sizeof(BitSeq::Word);
  return total;
}

std::vector<BitSeq> harness_mbr_decode(const DistributedStore& store, const MbrCode& code,
                                       std::span<const std::size_t> ids, CostLedger& ledger,
                                       const HarnessOptions& options) {
  const auto nodes = require_count(ids, code.k(), "decode nodes");
  MbrRetrieved mhat(code.k(), code.d());
  for (std::size_t v = 1; v <= code.k(); ++v) {
    const auto range = mbr_decode_range(code, nodes.node(v), v);
    for (std::size_t u = v; u <= code.d(); ++u) {
      mhat.at(v, u) = store.fetch_subrange(nodes.node(v), u, range.from, range.to, ledger);
    }
  }
  std::vector<BitSeq> out;
  {
    SeqAllocProbe probe;
    out = mbr_decode(std::move(mhat), nodes, code, &ledger, {options.jobs, options.mode});
    note_aux(ledger, probe, 0);
  }
  return out;
}

NodeShare harness_mbr_repair(const DistributedStore& store, const MbrCode& code, std::size_t failed,
                             std::span<const std::size_t> ids, CostLedger& ledger, const HarnessOptions& options) {
  const auto helpers = require_count(ids, code.d(), "helpers");
  std::vector<BitSeq> rhat;
  rhat.reserve(code.d());
  for (std::size_t v = 1; v <= code.d(); ++v) {
    const auto j = helpers.node(v);
    auto r = mbr_repair_helper(store.local_share(j), failed, v, code, &ledger);
    store.transmit(j, r, ledger);
    rhat.push_back(std::move(r));
  }
  NodeShare share;
  {
    SeqAllocProbe probe;
    share = mbr_repair(std::move(rhat), helpers, failed, code, &ledger, options.mode);
    note_aux(ledger, probe, 0);
  }
  return share;
}

std::vector<BitSeq> harness_msr_decode(const DistributedStore& store, const MsrCode& code,
                                       std::span<const std::size_t> ids, CostLedger& ledger,
                                       const HarnessOptions& options) {
  const auto nodes = require_count(ids, code.k(), "decode nodes");
  std::vector<NodeShare> shares;
  shares.reserve(code.k());
  for (auto i : nodes.descending()) shares.push_back(store.fetch_share(i, ledger));
  std::vector<BitSeq> out;
  {
    SeqAllocProbe probe;
    out = msr_decode(shares, code, &ledger, options.jobs);
    note_aux(ledger, probe, 0);
  }
  return out;
}

NodeShare harness_msr_repair(const DistributedStore& store, const MsrCode& code, std::size_t failed,
                             std::span<const std::size_t> ids, CostLedger& ledger) {
  const auto helpers = require_count(ids, code.d(), "helpers");
  std::vector<BitSeq> rhat;
  rhat.reserve(code.d());
  for (std::size_t v = 1; v <= code.d(); ++v) {
    const auto j = helpers.node(v);
    auto r = msr_repair_helper(store.local_share(j), failed, v, code, &ledger);
    store.transmit(j, r, ledger);
    rhat.push_back(std::move(r));
  }
  NodeShare share;
  {
    SeqAllocProbe probe;
    share = msr_repair(std::move(rhat), helpers, failed, code, &ledger);
    note_aux(ledger, probe, seq_storage_bytes(share.seqs));
  }
  return share;
}

}  // namespace sxrc
