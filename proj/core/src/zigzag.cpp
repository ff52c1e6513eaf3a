#include <functional>
#include <queue>
#include <utility>

#include "sxrc/errors.hpp"
#include "sxrc/solver.hpp"

namespace sxrc {

// Worklist variant: unknown_count[r][p] is the number of still-unsolved bits
// feeding y_r[p]; any position whose count drops to one is solvable.
std::vector<BitSeq> zigzag_solve(std::span<const BitSeq> y, const ShiftMatrix& exps, std::size_t length,
                                 CostLedger* ledger) {
  const auto k = exps.rows();
  if (!exps.square()) throw ParameterError("zigzag needs a square exponent matrix");
  if (!check_rid(exps)) throw ParameterError("zigzag needs an RID exponent matrix");
  if (y.size() != k) throw ContractError("zigzag: one coded row per unknown required");
  for (std::size_t r = 1; r <= k; ++r) {
    if (y[r - 1].size() != length + exps(r, k)) {
      throw ContractError("zigzag consumes full coded rows of length L + t(r,k)");
    }
  }

  std::vector<BitSeq> work(y.begin(), y.end());
  std::vector<BitSeq> x(k, BitSeq(length));
  std::vector<BitSeq> known(k, BitSeq(length));
  std::vector<std::vector<std::uint32_t>> unknown_count(k);
  std::uint64_t aux_integers = 0;
  std::uint64_t int_ops = 0;

  using Pos = std::pair<std::size_t, std::size_t>;  // (row, position)
  std::priority_queue<Pos, std::vector<Pos>, std::greater<>> ready;

  for (std::size_t r = 1; r <= k; ++r) {
    auto& cnt = unknown_count[r - 1];
    cnt.assign(work[r - 1].size() + 1, 0);
    aux_integers += cnt.size();
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t l = 1; l <= length; ++l) ++cnt[l + exps(r, j)];
    }
    for (std::size_t p = 1; p < cnt.size(); ++p) {
      if (cnt[p] == 1) ready.emplace(r, p);
    }
  }

  std::uint64_t xors = 0;
  std::size_t solved = 0;
  std::size_t peak_queue = ready.size();
  while (!ready.empty()) {
    const auto [r, p] = ready.top();
    ready.pop();
    if (unknown_count[r - 1][p] != 1) continue;  // stale entry
    // Identify the one unsolved contributor.
    std::size_t col = 0;
    std::size_t bit = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      ++int_ops;
      const auto t = exps(r, j);
      if (p <= t || p - t > length) continue;
      if (!known[j - 1].get(p - t)) {
        col = j;
        bit = p - t;
        break;
      }
    }
    if (col == 0) throw ContractError("zigzag: worklist out of sync");
    const bool value = work[r - 1].get(p);
    x[col - 1].set(bit, value);
    known[col - 1].set(bit, true);
    ++solved;
    for (std::size_t rr = 1; rr <= k; ++rr) {
      const auto q = bit + exps(rr, col);
      work[rr - 1].xor_bit(q, value);
      ++xors;
      ++int_ops;
      if (--unknown_count[rr - 1][q] == 1) ready.emplace(rr, q);
    }
    peak_queue = std::max(peak_queue, ready.size());
  }
  if (solved != k * length) throw SingularSystemError("zigzag: ran out of solvable bits");

  if (ledger != nullptr) {
    ledger->add_xor(xors, xors);
    ledger->add_integer_ops(int_ops);
    ledger->note_aux_integers(aux_integers + 2 * peak_queue);
  }
  return x;
}

}  // namespace sxrc
