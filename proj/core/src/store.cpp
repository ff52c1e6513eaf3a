#include "sxrc/store.hpp"

#include <string>

#include "sxrc/errors.hpp"

namespace sxrc {

DistributedStore::DistributedStore(CodeParams params, std::vector<NodeShare> shares)
    : params_(std::move(params)), slots_(params_.n) {
  std::vector<bool> seen(params_.n, false);
  for (auto& s : shares) {
    if (s.node == 0 || s.node > params_.n) throw ParameterError("share node index out of range");
    if (seen[s.node - 1]) throw ParameterError("duplicate share for node " + std::to_string(s.node));
    seen[s.node - 1] = true;
    auto& slot = slots_[s.node - 1];
    slot.digest = fnv1a64(serialize_share(s, params_));
    slot.share = std::move(s);
  }
  for (std::size_t i = 0; i < params_.n; ++i) {
    slots_[i].share.node = i + 1;
    if (!seen[i]) slots_[i].alive = false;
  }
}

DistributedStore DistributedStore::load(const std::filesystem::path& dir, const StoreManifest& manifest) {
  std::vector<NodeShare> shares;
  std::vector<std::pair<std::size_t, std::uint64_t>> expected;
  for (std::size_t node = 1; node <= manifest.params.n; ++node) {
    const auto path = share_path(dir, node);
    if (!std::filesystem::exists(path)) continue;
    auto file = read_share(path);
    if (!(file.params == manifest.params)) throw VerificationError("share parameters disagree with the manifest");
    if (file.share.node != node) throw VerificationError("share file holds the wrong node");
    shares.push_back(std::move(file.share));
  }
  DistributedStore store(manifest.params, std::move(shares));
  for (const auto& [node, dg] : manifest.digests) {
    if (node == 0 || node > store.slots_.size()) throw FormatError("manifest digest for an unknown node");
    auto& slot = store.slots_[node - 1];
    if (slot.alive && slot.digest != dg) {
      throw VerificationError("node " + std::to_string(node) + " does not match its manifest digest");
    }
    slot.digest = dg;
  }
  return store;
}

const DistributedStore::Slot& DistributedStore::slot(std::size_t node) const {
  if (node == 0 || node > slots_.size()) throw ParameterError("node index out of range");
  return slots_[node - 1];
}

DistributedStore::Slot& DistributedStore::slot(std::size_t node) {
  if (node == 0 || node > slots_.size()) throw ParameterError("node index out of range");
  return slots_[node - 1];
}

void DistributedStore::require_alive(const Slot& s) const {
  if (!s.alive) throw UnavailableError("node " + std::to_string(s.share.node) + " is unavailable");
}

bool DistributedStore::alive(std::size_t node) const {
  std::lock_guard lock(*mutex_);
  return slot(node).alive;
}

std::vector<std::size_t> DistributedStore::alive_nodes() const {
  std::lock_guard lock(*mutex_);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].alive) out.push_back(i + 1);
  }
  return out;
}

BitSeq DistributedStore::fetch_subrange(std::size_t node, std::size_t seq, std::size_t from, std::size_t to,
                                        CostLedger& ledger) const {
  std::lock_guard lock(*mutex_);
  const auto& s = slot(node);
  require_alive(s);
  if (seq == 0 || seq > s.share.seqs.size()) throw ContractError("sequence index out of range");
  const auto& y = s.share.seqs[seq - 1];
  if (from == 0 || to < from || to > y.size()) throw ContractError("fetch range outside the stored sequence");
  ledger.add_transfer(to - from + 1);
  return subseq(y, from, static_cast<std::ptrdiff_t>(to));
}

NodeShare DistributedStore::fetch_share(std::size_t node, CostLedger& ledger) const {
  std::lock_guard lock(*mutex_);
  const auto& s = slot(node);
  require_alive(s);
  for (const auto& y : s.share.seqs) ledger.add_transfer(y.size());
  return s.share;
}

const NodeShare& DistributedStore::local_share(std::size_t node) const {
  std::lock_guard lock(*mutex_);
  const auto& s = slot(node);
  require_alive(s);
  return s.share;
}

void DistributedStore::transmit(std::size_t from_node, const BitSeq& payload, CostLedger& ledger) const {
  std::lock_guard lock(*mutex_);
  require_alive(slot(from_node));
  ledger.add_transfer(payload.size());
}

void DistributedStore::fail_node(std::size_t node) {
  std::lock_guard lock(*mutex_);
  auto& s = slot(node);
  if (!s.alive) throw ContractError("node " + std::to_string(node) + " has already failed");
  s.alive = false;
  s.share.seqs.clear();
  s.share.seqs.shrink_to_fit();
}

void DistributedStore::heal_node(NodeShare share) {
  std::lock_guard lock(*mutex_);
  auto& s = slot(share.node);
  if (s.alive) throw ContractError("node " + std::to_string(share.node) + " is alive");
  const auto dg = fnv1a64(serialize_share(share, params_));
  if (s.digest != 0 && dg != s.digest) {
    throw VerificationError("repaired share of node " + std::to_string(share.node) + " differs from the original");
  }
  s.digest = dg;
  s.share = std::move(share);
  s.alive = true;
}

std::uint64_t DistributedStore::digest(std::size_t node) const {
  std::lock_guard lock(*mutex_);
  return slot(node).digest;
}

}  // namespace sxrc
