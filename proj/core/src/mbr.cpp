#include "sxrc/mbr.hpp"

#include <utility>

#include "sxrc/errors.hpp"
#include "sxrc/parallel.hpp"

namespace sxrc {
namespace {

void check_node(const MbrCode& code, std::size_t node) {
  if (node == 0 || node > code.n()) throw ParameterError("node index out of range");
}

// dst[off+1 : L] ^= src[1 : L-off]; empty when off >= L.
void substitute(BitSeq& dst, const BitSeq& src, std::ptrdiff_t off, std::size_t length, CostLedger* ledger) {
  if (off < 0) throw ContractError("negative substitution offset");
  const auto o = static_cast<std::size_t>(off);
  if (o >= length) return;
  xor_into(dst, o, src, 1, length - o, ledger);
}

}  // namespace

MbrCode::MbrCode(std::size_t n, std::size_t k, std::size_t d, std::size_t length, ShiftMatrix psi)
    : n_(n), k_(k), d_(d), length_(length), psi_(std::move(psi)) {
  if (k == 0 || k > d || d >= n) throw ParameterError("MBR needs 1 <= k <= d < n");
  if (length == 0) throw ParameterError("sequence length must be positive");
  if (psi_.rows() != n || psi_.cols() != d) throw ParameterError("MBR generator must be n x d");
  if (!check_rid(psi_)) throw ParameterError("MBR generator lacks the RID property");
}

MbrCode MbrCode::vandermonde(std::size_t n, std::size_t k, std::size_t d, std::size_t length) {
  if (n == 0 || d == 0) throw ParameterError("MBR needs 1 <= k <= d < n");
  return MbrCode(n, k, d, length, sxrc::vandermonde(n, d));
}

std::size_t MbrCode::share_seq_length(std::size_t node) const {
  check_node(*this, node);
  return length_ + psi_(node, d_);
}

std::optional<std::size_t> mbr_message_index(std::size_t k, std::size_t d, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i > d || j > d) throw ContractError("message index out of range");
  if (i > j) std::swap(i, j);
  if (i > k) return std::nullopt;
  if (j <= k) return (i - 1) * k - (i - 1) * (i - 2) / 2 + (j - i);
  return k * (k + 1) / 2 + (i - 1) * (d - k) + (j - k - 1);
}

MbrMessage MbrMessage::pack(std::vector<BitSeq> msgs, const MbrCode& code) {
  if (msgs.size() != code.message_count()) throw ParameterError("MBR message needs exactly B sequences");
  for (const auto& m : msgs) {
    if (m.size() != code.length()) throw ParameterError("every message sequence must hold L bits");
  }
  return MbrMessage(code.k(), code.d(), code.length(), std::move(msgs));
}

const BitSeq* MbrMessage::entry(std::size_t i, std::size_t j) const {
  const auto idx = mbr_message_index(k_, d_, i, j);
  return idx ? &msgs_[*idx] : nullptr;
}

NodeShare mbr_encode(const MbrMessage& msg, const MbrCode& code, std::size_t node, CostLedger* ledger) {
  check_node(code, node);
  if (msg.length() != code.length() || msg.sequences().size() != code.message_count()) {
    throw ParameterError("message does not match the code");
  }
  const auto d = code.d();
  NodeShare share{node, {}};
  share.seqs.reserve(d);
  for (std::size_t u = 1; u <= d; ++u) {
    BitSeq y(code.share_seq_length(node));
    bool first = true;
    for (std::size_t j = 1; j <= d; ++j) {
      const auto* m = msg.entry(j, u);
      if (m == nullptr) continue;
      xor_shifted(y, *m, code.psi()(node, j), first ? nullptr : ledger);
      first = false;
    }
    share.seqs.push_back(std::move(y));
  }
  return share;
}

BitRange mbr_decode_range(const MbrCode& code, std::size_t node, std::size_t rank) {
  check_node(code, node);
  if (rank == 0 || rank > code.k()) throw ContractError("decode rank out of range");
  const std::size_t off = code.psi()(node, rank);
  return {off + 1, off + code.length()};
}

MbrRetrieved::MbrRetrieved(std::size_t k, std::size_t d) : k_(k), d_(d) {
  if (k == 0 || k > d) throw ContractError("retrieved set needs 1 <= k <= d");
  seqs_.resize(k * d - k * (k - 1) / 2);
}

std::size_t MbrRetrieved::slot(std::size_t v, std::size_t u) const {
  if (v == 0 || v > k_ || u < v || u > d_) throw ContractError("retrieved index out of range");
  return (v - 1) * d_ - (v - 1) * (v - 2) / 2 + (u - v);
}

BitSeq& MbrRetrieved::at(std::size_t v, std::size_t u) { return seqs_[slot(v, u)]; }
const BitSeq& MbrRetrieved::at(std::size_t v, std::size_t u) const { return seqs_[slot(v, u)]; }

std::vector<BitSeq> mbr_extract_for_decode(const NodeShare& share, std::size_t rank, const MbrCode& code) {
  if (share.seqs.size() != code.d()) throw ParameterError("share does not hold d sequences");
  const auto range = mbr_decode_range(code, share.node, rank);
  std::vector<BitSeq> out;
  out.reserve(code.d() - rank + 1);
  for (std::size_t u = rank; u <= code.d(); ++u) {
    const auto& y = share.seqs[u - 1];
    if (y.size() < range.to) throw ContractError("stored sequence shorter than its decode window");
    out.push_back(subseq(y, range.from, static_cast<std::ptrdiff_t>(range.to)));
  }
  return out;
}

void mbr_decode_in_place(MbrRetrieved& mhat, const DescendingNodes& nodes, const MbrCode& code,
                         CostLedger* ledger, const MbrDecodeOptions& options) {
  const auto k = code.k();
  const auto d = code.d();
  const auto L = code.length();
  if (nodes.size() != k) throw ParameterError("decoding needs exactly k distinct nodes");
  for (auto i : nodes.descending()) check_node(code, i);
  if (mhat.k() != k || mhat.d() != d) throw ContractError("retrieved set shape does not match the code");
  for (const auto& s : mhat.buffers()) {
    if (s.size() != L) throw ContractError("every retrieved subsequence must hold L bits");
  }
  const auto& psi = code.psi();
  const auto node = [&](std::size_t rank) { return nodes.node(rank); };
  const EliminateOptions elim{options.mode, nullptr};

  // Step 1: columns k+1..d, each a k x k system over columns 1..k of Psi.
  if (d > k) {
    const auto sys = system_matrix(psi, nodes, k);
    detail::parallel_for(d - k, options.jobs, [&](std::size_t c) {
      const auto u = d - c;
      std::vector<BitSeq*> xs(k);
      for (std::size_t v = 1; v <= k; ++v) xs[v - 1] = &mhat.at(v, u);
      shift_xor_eliminate(sys, L, xs, ledger, elim);
    });
    for (std::size_t u = d; u > k; --u) {
      for (std::size_t v = 1; v <= k; ++v) {
        for (std::size_t w = 1; w <= v; ++w) {
          substitute(mhat.at(w, v), mhat.at(v, u), psi.diff(node(w), u, w), L, ledger);
        }
      }
    }
  }

  // Step 2: the symmetric block, u = k down to 2.
  for (std::size_t u = k; u >= 2; --u) {
    const auto sub = nodes.leading(u);
    const auto sys = system_matrix(psi, sub, u);
    std::vector<BitSeq*> xs(u);
    for (std::size_t v = 1; v <= u; ++v) xs[v - 1] = &mhat.at(v, u);
    shift_xor_eliminate(sys, L, xs, ledger, elim);
    for (std::size_t v = 1; v < u; ++v) {
      for (std::size_t w = 1; w <= v; ++w) {
        substitute(mhat.at(w, v), mhat.at(v, u), psi.diff(node(w), u, w), L, ledger);
      }
    }
  }
}

std::vector<BitSeq> mbr_decode(MbrRetrieved mhat, const DescendingNodes& nodes, const MbrCode& code,
                               CostLedger* ledger, const MbrDecodeOptions& options) {
  mbr_decode_in_place(mhat, nodes, code, ledger, options);
  std::vector<BitSeq> out(code.message_count());
  for (std::size_t v = 1; v <= code.k(); ++v) {
    for (std::size_t u = v; u <= code.d(); ++u) {
      out[*mbr_message_index(code.k(), code.d(), v, u)] = std::move(mhat.at(v, u));
    }
  }
  return out;
}

BitRange mbr_repair_range(const MbrCode& code, std::size_t helper, std::size_t rank, std::size_t failed) {
  check_node(code, helper);
  check_node(code, failed);
  if (helper == failed) throw ParameterError("a failed node cannot help repair itself");
  if (rank == 0 || rank > code.d()) throw ContractError("helper rank out of range");
  const std::size_t off = code.psi()(helper, rank);
  return {off + 1, off + code.share_seq_length(failed)};
}

BitSeq mbr_repair_helper(const NodeShare& share, std::size_t failed, std::size_t rank, const MbrCode& code,
                         CostLedger* ledger) {
  if (share.seqs.size() != code.d()) throw ParameterError("share does not hold d sequences");
  const auto range = mbr_repair_range(code, share.node, rank, failed);
  const auto off = static_cast<std::ptrdiff_t>(range.from - 1);
  BitSeq out(range.size());
  for (std::size_t u = 1; u <= code.d(); ++u) {
    const auto delta = static_cast<std::ptrdiff_t>(code.psi()(failed, u)) - off;
    xor_shifted(out, share.seqs[u - 1], delta, u == 1 ? nullptr : ledger);
  }
  return out;
}

NodeShare mbr_repair(std::vector<BitSeq> rhat, const DescendingNodes& helpers, std::size_t failed,
                     const MbrCode& code, CostLedger* ledger, BackSubstitution mode) {
  check_node(code, failed);
  if (helpers.size() != code.d()) throw ParameterError("repair needs exactly d helpers");
  if (helpers.contains(failed)) throw ParameterError("a failed node cannot help repair itself");
  for (auto j : helpers.descending()) check_node(code, j);
  if (rhat.size() != code.d()) throw ContractError("one helper subsequence per helper required");
  const auto len = code.share_seq_length(failed);
  std::vector<BitSeq*> xs;
  xs.reserve(rhat.size());
  for (auto& r : rhat) xs.push_back(&r);
  shift_xor_eliminate(system_matrix(code.psi(), helpers, code.d()), len, xs, ledger, {mode, nullptr});
  return NodeShare{failed, std::move(rhat)};
}

}  // namespace sxrc
