#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sxrc/bitseq.hpp"
#include "sxrc/cost_ledger.hpp"
#include "sxrc/shift_matrix.hpp"

namespace sxrc {

// Solving k x k systems  y_r = sum_j z^t(r,j) x_j  where the exponent matrix
// has the RID property and its rows are in ascending order.
//
// The in-place elimination works on the selected subsequences
//   xhat_i = y_{k+1-i}[ t(k+1-i, i) + (1:L) ],
// exactly kL input bits, and leaves x_i in the buffer that held xhat_i.

/// Receives solve and substitution events from the elimination.
class EliminationTrace {
 public:
  virtual ~EliminationTrace() = default;
  // Bit `bit` of unknown `unknown` is solved at iteration `iteration`.
  // Bits beyond L are reported too; they are solvable as zero and not written.
  virtual void on_solve(std::size_t iteration, std::size_t unknown, std::size_t bit) = 0;
};

enum class BackSubstitution {
  kBitSerial,   // one bit XOR per substitution, as the algorithm is stated
  kWordBatched  // runs of solved bits substituted with word-level xor_into
};

struct EliminateOptions {
  BackSubstitution mode = BackSubstitution::kBitSerial;
  EliminationTrace* trace = nullptr;  // bit-serial mode only
};

/// An owning bundle of a system ready for elimination.
struct ShiftXorSystem {
  ShiftMatrix exponents;
  std::size_t length = 0;
  std::vector<BitSeq> xhat;
};

/// Offset of unknown i's subsequence inside its source row: t(k+1-i, i).
[[nodiscard]] inline std::size_t selection_offset(const ShiftMatrix& exps, std::size_t i) {
  return exps(exps.rows() + 1 - i, i);
}

/// Picks xhat_1..xhat_k out of the coded rows y (ascending row order), kL bits
/// in total. Throws ContractError when a row is too short to supply its slice.
[[nodiscard]] std::vector<BitSeq> select_subsequences(std::span<const BitSeq> y,
                                                      const ShiftMatrix& exps, std::size_t length);

/// Encodes unknowns into full coded rows: y_r = sum_j z^t(r,j) x_j,
/// each of length L + max_j t(r,j).
[[nodiscard]] std::vector<BitSeq> encode_system(std::span<const BitSeq> x, const ShiftMatrix& exps,
                                                CostLedger* ledger = nullptr);

/// In-place shift-XOR elimination. xhat[i-1] holds the selected subsequence of
/// unknown i (exactly `length` bits) on entry and x_i on return. Allocates no
/// sequence storage. Throws ParameterError on a non-RID or non-square matrix.
void shift_xor_eliminate(const ShiftMatrix& exps, std::size_t length, std::span<BitSeq* const> xhat,
                         CostLedger* ledger, const EliminateOptions& options = {});
void shift_xor_eliminate(ShiftXorSystem& sys, CostLedger* ledger, const EliminateOptions& options = {});

/// Successive-cancellation baseline. Consumes the full coded rows
/// (y[r].size() == L + t(r,k)), keeps an O(kL) integer worklist, and returns
/// fresh solution buffers. When several bits are solvable the one in the
/// lowest row, then lowest position, goes first.
[[nodiscard]] std::vector<BitSeq> zigzag_solve(std::span<const BitSeq> y, const ShiftMatrix& exps,
                                               std::size_t length, CostLedger* ledger = nullptr);

/// Dense GF(2) reference: one linear equation per observed bit of the selected
/// subsequences, Gaussian elimination over the kL unknown bits. For small
/// systems only. Throws SingularSystemError if the system is rank deficient.
[[nodiscard]] std::vector<BitSeq> gf2_oracle_solve(std::span<const BitSeq> y, const ShiftMatrix& exps,
                                                   std::size_t length);

}  // namespace sxrc
