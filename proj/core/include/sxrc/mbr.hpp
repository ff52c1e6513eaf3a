#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sxrc/bitseq.hpp"
#include "sxrc/cost_ledger.hpp"
#include "sxrc/shift_matrix.hpp"
#include "sxrc/share.hpp"
#include "sxrc/solver.hpp"

namespace sxrc {

/// Parameters of a shift-XOR MBR code: n nodes, any k recover the message,
/// any d helpers repair a node, each node stores alpha = d sequences.
class MbrCode {
 public:
  // Throws ParameterError unless 1 <= k <= d < n, L >= 1 and psi is an n x d
  // RID matrix.
  MbrCode(std::size_t n, std::size_t k, std::size_t d, std::size_t length, ShiftMatrix psi);
  static MbrCode vandermonde(std::size_t n, std::size_t k, std::size_t d, std::size_t length);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t d() const noexcept { return d_; }
  [[nodiscard]] std::size_t alpha() const noexcept { return d_; }
  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] const ShiftMatrix& psi() const noexcept { return psi_; }
  // B = k(k+1)/2 + k(d-k).
  [[nodiscard]] std::size_t message_count() const noexcept { return k_ * (k_ + 1) / 2 + k_ * (d_ - k_); }
  // Every stored sequence of `node` has L + t(node, d) bits.
  [[nodiscard]] std::size_t share_seq_length(std::size_t node) const;

 private:
  std::size_t n_, k_, d_, length_;
  ShiftMatrix psi_;
};

/// Index of message matrix entry m(i, j) in the packed list (S upper triangle
/// row-major, then T row-major), or nullopt for the zero block. Symmetric:
/// (i, j) and (j, i) give the same index.
[[nodiscard]] std::optional<std::size_t> mbr_message_index(std::size_t k, std::size_t d, std::size_t i,
                                                           std::size_t j);

/// The d x d message matrix [[S, T], [T', 0]] over B sequences of L bits.
class MbrMessage {
 public:
  static MbrMessage pack(std::vector<BitSeq> msgs, const MbrCode& code);

  // nullptr for the zero block.
  [[nodiscard]] const BitSeq* entry(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::span<const BitSeq> sequences() const noexcept { return msgs_; }
  [[nodiscard]] std::size_t length() const noexcept { return length_; }

 private:
  MbrMessage(std::size_t k, std::size_t d, std::size_t length, std::vector<BitSeq> msgs)
      : k_(k), d_(d), length_(length), msgs_(std::move(msgs)) {}
  std::size_t k_, d_, length_;
  std::vector<BitSeq> msgs_;
};

/// Y^node = Psi^node M.
[[nodiscard]] NodeShare mbr_encode(const MbrMessage& msg, const MbrCode& code, std::size_t node,
                                   CostLedger* ledger = nullptr);

/// Window of stored sequence u that the rank-v decode node sends:
/// t(i_v, v) + (1:L), for every u = v..d.
[[nodiscard]] BitRange mbr_decode_range(const MbrCode& code, std::size_t node, std::size_t rank);

/// Retrieved subsequences mhat(v, u), 1 <= v <= k, v <= u <= d, each L bits.
/// After mbr_decode the same buffers hold m(v, u).
class MbrRetrieved {
 public:
  MbrRetrieved(std::size_t k, std::size_t d);

  [[nodiscard]] BitSeq& at(std::size_t v, std::size_t u);
  [[nodiscard]] const BitSeq& at(std::size_t v, std::size_t u) const;
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t d() const noexcept { return d_; }
  // Row-major over (v, u).
  [[nodiscard]] std::vector<BitSeq>& buffers() noexcept { return seqs_; }

 private:
  [[nodiscard]] std::size_t slot(std::size_t v, std::size_t u) const;
  std::size_t k_, d_;
  std::vector<BitSeq> seqs_;
};

/// The d-v+1 subsequences the rank-v node transmits for decoding.
[[nodiscard]] std::vector<BitSeq> mbr_extract_for_decode(const NodeShare& share, std::size_t rank,
                                                         const MbrCode& code);

struct MbrDecodeOptions {
  std::size_t jobs = 1;  // parallel Step-1 column systems
  BackSubstitution mode = BackSubstitution::kBitSerial;
};

/// In-place decode. `mhat` holds the retrieved subsequences of `nodes`; on
/// return its buffers hold the message. Allocates no sequence storage.
void mbr_decode_in_place(MbrRetrieved& mhat, const DescendingNodes& nodes, const MbrCode& code,
                         CostLedger* ledger, const MbrDecodeOptions& options = {});

/// Decodes and moves the message out in packed order (B sequences).
[[nodiscard]] std::vector<BitSeq> mbr_decode(MbrRetrieved mhat, const DescendingNodes& nodes,
                                             const MbrCode& code, CostLedger* ledger,
                                             const MbrDecodeOptions& options = {});

/// Window of r_j the rank-v helper sends when node `failed` is repaired.
[[nodiscard]] BitRange mbr_repair_range(const MbrCode& code, std::size_t helper, std::size_t rank,
                                        std::size_t failed);

/// r_j = sum_u z^t(i,u) y_{j,u}, restricted to the helper's window; L + t(i,d) bits.
[[nodiscard]] BitSeq mbr_repair_helper(const NodeShare& share, std::size_t failed, std::size_t rank,
                                       const MbrCode& code, CostLedger* ledger = nullptr);

/// Solves the d x d helper system in place; the rhat buffers become the share.
[[nodiscard]] NodeShare mbr_repair(std::vector<BitSeq> rhat, const DescendingNodes& helpers,
                                   std::size_t failed, const MbrCode& code, CostLedger* ledger,
                                   BackSubstitution mode = BackSubstitution::kBitSerial);

}  // namespace sxrc
