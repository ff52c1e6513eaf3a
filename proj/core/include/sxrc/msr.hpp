#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sxrc/bitseq.hpp"
#include "sxrc/cost_ledger.hpp"
#include "sxrc/shift_matrix.hpp"
#include "sxrc/share.hpp"
#include "sxrc/solver.hpp"

namespace sxrc {

/// Parameters of a shift-XOR MSR code with d = 2k-2 and alpha = k-1.
/// Node i stores Y^i = Phi^i S + z^lambda_i Phi^i T.
class MsrCode {
 public:
  // Throws ParameterError unless k >= 2, d == 2k-2, d < n, L >= 1, phi is
  // n x alpha, lambda has n entries and the composite [Phi  Lambda Phi] is RID.
  MsrCode(std::size_t n, std::size_t k, std::size_t d, std::size_t length, ShiftMatrix phi,
          std::vector<Exponent> lambda);
  // t(i,j) = (i-1)(j-1), lambda_i = (i-1) alpha.
  static MsrCode vandermonde(std::size_t n, std::size_t k, std::size_t length);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::size_t d() const noexcept { return 2 * (k_ - 1); }
  [[nodiscard]] std::size_t alpha() const noexcept { return k_ - 1; }
  [[nodiscard]] std::size_t length() const noexcept { return length_; }
  [[nodiscard]] const ShiftMatrix& phi() const noexcept { return phi_; }
  [[nodiscard]] Exponent lambda(std::size_t node) const noexcept { return lambda_[node - 1]; }
  [[nodiscard]] std::span<const Exponent> lambdas() const noexcept { return lambda_; }
  // n x 2 alpha composite exponents.
  [[nodiscard]] const ShiftMatrix& psi() const noexcept { return psi_; }
  // B = k alpha.
  [[nodiscard]] std::size_t message_count() const noexcept { return k_ * alpha(); }
  // L + t(node, alpha) + lambda_node.
  [[nodiscard]] std::size_t share_seq_length(std::size_t node) const;

 private:
  std::size_t n_, k_, length_;
  ShiftMatrix phi_;
  std::vector<Exponent> lambda_;
  ShiftMatrix psi_;
};

/// Position of entry (i, j) of an alpha x alpha symmetric block in its
/// upper-triangle row-major storage.
[[nodiscard]] std::size_t symmetric_index(std::size_t alpha, std::size_t i, std::size_t j);

/// S and T, each alpha(alpha+1)/2 sequences of L bits. The packed message
/// lists S's upper triangle row-major followed by T's.
class MsrMessage {
 public:
  static MsrMessage pack(std::vector<BitSeq> msgs, const MsrCode& code);

  [[nodiscard]] const BitSeq& s(std::size_t i, std::size_t j) const;
  [[nodiscard]] const BitSeq& t(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::span<const BitSeq> sequences() const noexcept { return msgs_; }
  [[nodiscard]] std::size_t alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::size_t length() const noexcept { return length_; }

 private:
  MsrMessage(std::size_t alpha, std::size_t length, std::vector<BitSeq> msgs)
      : alpha_(alpha), length_(length), msgs_(std::move(msgs)) {}
  std::size_t alpha_, length_;
  std::vector<BitSeq> msgs_;
};

[[nodiscard]] NodeShare msr_encode(const MsrMessage& msg, const MsrCode& code, std::size_t node,
                                   CostLedger* ledger = nullptr);

/// The pair value c = Y^a (Phi^b)' sliced to L + t(a,alpha) + t(b,alpha) bits.
/// The slice starts at lambda_a + 1 when lambda_a < lambda_b (the shifted
/// partner of the pair equation) and at 1 otherwise.
[[nodiscard]] BitSeq msr_c_hat(const NodeShare& share, std::size_t partner, const MsrCode& code,
                               CostLedger* ledger = nullptr);

/// Per-block Step-1 outputs: entry (u, v), u != v ranks, v <= alpha, holds
/// p_{u,v} (or q_{u,v}) of L + t(i_u,alpha) + t(i_v,alpha) bits. Step 2
/// rewrites the entries in place.
class PairTable {
 public:
  explicit PairTable(std::size_t k) : k_(k), cells_(k * k) {}

  [[nodiscard]] BitSeq& at(std::size_t u, std::size_t v) { return cells_[(u - 1) * k_ + (v - 1)]; }
  [[nodiscard]] const BitSeq& at(std::size_t u, std::size_t v) const {
    return cells_[(u - 1) * k_ + (v - 1)];
  }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }

 private:
  std::size_t k_;
  std::vector<BitSeq> cells_;
};

struct MsrStep1Result {
  PairTable p;
  PairTable q;
};

/// chat.at(u, v) = msr_c_hat(share of rank u, node of rank v) for all u != v.
[[nodiscard]] PairTable msr_c_hats(std::span<const NodeShare> shares, const DescendingNodes& nodes,
                                   const MsrCode& code, CostLedger* ledger = nullptr);

/// Solves every pair system [[1, z^lambda_small], [1, z^lambda_large]] in
/// place on the c-hat buffers, then mirrors p, q to the transposed slots the
/// second step reads.
[[nodiscard]] MsrStep1Result msr_step1(PairTable chat, const DescendingNodes& nodes, const MsrCode& code,
                                       CostLedger* ledger, std::size_t jobs = 1);

/// Recovers one symmetric block (S from p, T from q) in the upper-triangle
/// order of symmetric_index. Consumes the table.
[[nodiscard]] std::vector<BitSeq> msr_step2(PairTable& block, const DescendingNodes& nodes,
                                            const MsrCode& code, CostLedger* ledger, std::size_t jobs = 1);

/// Full decode from k shares; returns the packed message.
[[nodiscard]] std::vector<BitSeq> msr_decode(std::span<const NodeShare> shares, const MsrCode& code,
                                             CostLedger* ledger, std::size_t jobs = 1);

/// Window of r_j = Y^j (Phi^i)' the rank-v helper sends: t'(j, v) + (1 : L + t(i, alpha)),
/// t' the composite exponents.
[[nodiscard]] BitRange msr_repair_range(const MsrCode& code, std::size_t helper, std::size_t rank,
                                        std::size_t failed);

[[nodiscard]] BitSeq msr_repair_helper(const NodeShare& share, std::size_t failed, std::size_t rank,
                                       const MsrCode& code, CostLedger* ledger = nullptr);

/// Solves the d x d composite system for X^i = (Phi^i S, Phi^i T) in place and
/// combines Y^i = X_{1:alpha} + z^lambda_i X_{alpha+1:2alpha}.
[[nodiscard]] NodeShare msr_repair(std::vector<BitSeq> rhat, const DescendingNodes& helpers,
                                   std::size_t failed, const MsrCode& code, CostLedger* ledger);

}  // namespace sxrc
