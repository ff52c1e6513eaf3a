#include "sxrc/solver.hpp"

#include <algorithm>

#include "sxrc/errors.hpp"

namespace sxrc {
namespace {

void validate_system(const ShiftMatrix& exps, std::size_t length, std::span<BitSeq* const> xhat) {
  if (!exps.square()) throw ParameterError("elimination needs a square exponent matrix");
  if (!check_rid(exps)) throw ParameterError("elimination needs an RID exponent matrix");
  if (xhat.size() != exps.rows()) throw ContractError("one subsequence per unknown required");
  for (const auto* s : xhat) {
    if (s == nullptr || s->size() != length) {
      throw ContractError("every selected subsequence must hold exactly L bits");
    }
  }
}

// Solved bit x_i[l] lands in xhat_j at position l + landing(i, j).
std::ptrdiff_t landing(const ShiftMatrix& exps, std::size_t i, std::size_t j) {
  const auto k = exps.rows();
  return exps.diff(k + 1 - j, i, j);
}

void eliminate_bit_serial(const ShiftMatrix& exps, const PhasePlan& plan, std::span<BitSeq* const> xhat,
                          CostLedger* ledger, EliminationTrace* trace) {
  const auto k = plan.k;
  const auto L = static_cast<std::ptrdiff_t>(plan.length);
  std::uint64_t xors = 0;
  std::uint64_t int_ops = 0;
  std::size_t s = 0;
  for (std::size_t b = 1; b <= k; ++b) {
    for (std::size_t it = 0; it < plan.phase_len[b - 1]; ++it) {
      ++s;
      for (std::size_t i = 1; i <= b; ++i) {
        const auto l = s - plan.prefix[i - 1];
        if (trace != nullptr) trace->on_solve(s, i, l);
        if (static_cast<std::ptrdiff_t>(l) > L) continue;
        const bool bit = xhat[i - 1]->get(l);
        for (std::size_t j = 1; j <= k; ++j) {
          if (j == i) continue;
          ++int_ops;
          const auto pos = static_cast<std::ptrdiff_t>(l) + landing(exps, i, j);
          if (pos > 0 && pos <= L) {
            xhat[j - 1]->xor_bit(static_cast<std::size_t>(pos), bit);
            ++xors;
          }
        }
      }
    }
  }
  if (ledger != nullptr) {
    ledger->add_xor(xors, xors);
    ledger->add_integer_ops(int_ops);
  }
}

// Largest block of consecutive iterations that can be processed as one run per
// unknown: for a < b, xhat_a[l] needs x_b[l - D] (D = t(k+1-a, b) - t(k+1-a, a)),
// which the schedule solves gap = P_a - P_b + D iterations earlier.
std::size_t batch_width(const ShiftMatrix& exps, const PhasePlan& plan) {
  const auto k = plan.k;
  const auto L = static_cast<std::ptrdiff_t>(plan.length);
  std::ptrdiff_t width = static_cast<std::ptrdiff_t>(BitSeq::kWordBits);
  for (std::size_t a = 1; a <= k; ++a) {
    for (std::size_t b = a + 1; b <= k; ++b) {
      const auto dep = exps.diff(k + 1 - a, b, a);
      if (dep >= L || dep <= -L) continue;  // no in-range dependency
      const auto gap = static_cast<std::ptrdiff_t>(plan.prefix[a - 1]) -
                       static_cast<std::ptrdiff_t>(plan.prefix[b - 1]) + dep;
      width = std::min(width, gap);
    }
  }
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(width, 1));
}

void eliminate_word_batched(const ShiftMatrix& exps, const PhasePlan& plan,
                            std::span<BitSeq* const> xhat, CostLedger* ledger) {
  const auto k = plan.k;
  const auto L = static_cast<std::ptrdiff_t>(plan.length);
  const auto width = static_cast<std::ptrdiff_t>(batch_width(exps, plan));
  const auto total = static_cast<std::ptrdiff_t>(plan.total_iterations());
  std::uint64_t int_ops = 0;
  for (std::ptrdiff_t s0 = 1; s0 <= total; s0 += width) {
    const auto s1 = std::min(total, s0 + width - 1);
    for (std::size_t i = 1; i <= k; ++i) {
      const auto p = static_cast<std::ptrdiff_t>(plan.prefix[i - 1]);
      const auto lo = std::max<std::ptrdiff_t>(1, s0 - p);
      const auto hi = std::min<std::ptrdiff_t>(L, s1 - p);
      if (hi < lo) continue;
      for (std::size_t j = 1; j <= k; ++j) {
        if (j == i) continue;
        ++int_ops;
        const auto delta = landing(exps, i, j);
        const auto a = std::max(lo, 1 - delta);
        const auto e = std::min(hi, L - delta);
        if (a > e) continue;
        xor_into(*xhat[j - 1], static_cast<std::size_t>(a + delta - 1), *xhat[i - 1],
                 static_cast<std::size_t>(a), static_cast<std::size_t>(e - a + 1), ledger);
      }
    }
  }
  if (ledger != nullptr) ledger->add_integer_ops(int_ops);
}

}  // namespace

std::vector<BitSeq> select_subsequences(std::span<const BitSeq> y, const ShiftMatrix& exps,
                                        std::size_t length) {
  const auto k = exps.rows();
  if (!exps.square() || y.size() != k) throw ContractError("select_subsequences: need k rows for a k x k system");
  std::vector<BitSeq> out;
  out.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& row = y[k - i];
    const auto off = selection_offset(exps, i);
    if (row.size() < off + length) throw ContractError("select_subsequences: coded row too short");
    out.push_back(subseq(row, off + 1, static_cast<std::ptrdiff_t>(off + length)));
  }
  return out;
}

std::vector<BitSeq> encode_system(std::span<const BitSeq> x, const ShiftMatrix& exps, CostLedger* ledger) {
  if (x.size() != exps.cols()) throw ContractError("encode_system: one input per column required");
  std::vector<BitSeq> y;
  y.reserve(exps.rows());
  for (std::size_t r = 1; r <= exps.rows(); ++r) {
    std::size_t len = 0;
    for (std::size_t j = 1; j <= exps.cols(); ++j) len = std::max(len, x[j - 1].size() + exps(r, j));
    BitSeq row(len);
    for (std::size_t j = 1; j <= exps.cols(); ++j) {
      xor_shifted(row, x[j - 1], static_cast<std::ptrdiff_t>(exps(r, j)), j == 1 ? nullptr : ledger);
    }
    y.push_back(std::move(row));
  }
  return y;
}

void shift_xor_eliminate(const ShiftMatrix& exps, std::size_t length, std::span<BitSeq* const> xhat,
                         CostLedger* ledger, const EliminateOptions& options) {
  validate_system(exps, length, xhat);
  const auto plan = phase_plan(exps, length);
  if (options.mode == BackSubstitution::kWordBatched) {
    eliminate_word_batched(exps, plan, xhat, ledger);
  } else {
    eliminate_bit_serial(exps, plan, xhat, ledger, options.trace);
  }
}

void shift_xor_eliminate(ShiftXorSystem& sys, CostLedger* ledger, const EliminateOptions& options) {
  std::vector<BitSeq*> ptrs;
  ptrs.reserve(sys.xhat.size());
  for (auto& s : sys.xhat) ptrs.push_back(&s);
  shift_xor_eliminate(sys.exponents, sys.length, ptrs, ledger, options);
}

}  // namespace sxrc
