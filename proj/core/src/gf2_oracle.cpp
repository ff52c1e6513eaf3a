#include <cstdint>
#include <utility>
#include <vector>

#include "sxrc/errors.hpp"
#include "sxrc/solver.hpp"

namespace sxrc {
namespace {

// Augmented dense matrix over GF(2); column n holds the right-hand side.
class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : cols_(cols), stride_((cols + 1 + 63) / 64), data_(rows * stride_, 0) {}

  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= std::uint64_t{1} << (c % 64); }
  void toggle(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }
  void add_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < stride_; ++w) row(dst)[w] ^= row(src)[w];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < stride_; ++w) std::swap(row(a)[w], row(b)[w]);
  }
  std::size_t cols() const { return cols_; }

 private:
  std::uint64_t* row(std::size_t r) { return data_.data() + r * stride_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * stride_; }

  std::size_t cols_;
  std::size_t stride_;
  std::vector<std::uint64_t> data_;
};

}  // namespace

std::vector<BitSeq> gf2_oracle_solve(std::span<const BitSeq> y, const ShiftMatrix& exps, std::size_t length) {
  const auto k = exps.rows();
  if (!exps.square() || y.size() != k) throw ContractError("oracle: need k coded rows for a k x k system");
  const auto n = k * length;
  Gf2Matrix a(n, n);
  const auto unknown = [length](std::size_t col, std::size_t bit) { return (col - 1) * length + (bit - 1); };

  // One equation per bit of each selected window: y_r[p] = sum_j x_j[p - t(r,j)].
  std::size_t eq = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto r = k + 1 - i;
    const std::size_t off = exps(r, i);
    for (std::size_t l = 1; l <= length; ++l, ++eq) {
      const auto p = off + l;
      for (std::size_t j = 1; j <= k; ++j) {
        const std::size_t t = exps(r, j);
        if (p > t && p - t <= length) a.toggle(eq, unknown(j, p - t));
      }
      if (y[r - 1].get(p)) a.set(eq, n);
    }
  }

  // Gauss-Jordan.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && !a.get(pivot, c)) ++pivot;
    if (pivot == n) throw SingularSystemError("selected subsequences do not determine the unknowns");
    if (pivot != c) a.swap_rows(pivot, c);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a.get(r, c)) a.add_row(r, c);
    }
  }

  std::vector<BitSeq> x(k, BitSeq(length));
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t l = 1; l <= length; ++l) {
      if (a.get(unknown(j, l), n)) x[j - 1].set(l, true);
    }
  }
  return x;
}

}  // namespace sxrc
