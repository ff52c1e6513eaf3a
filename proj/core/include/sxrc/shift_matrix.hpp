#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sxrc {

using Exponent = std::uint32_t;

/// Matrix of shift exponents: entry (i, j) stands for z^t(i, j).
/// Indices are 1-based to match the formulas that use them.
class ShiftMatrix {
 public:
  ShiftMatrix() = default;
  ShiftMatrix(std::size_t rows, std::size_t cols, std::vector<Exponent> row_major);
  ShiftMatrix(std::initializer_list<std::initializer_list<Exponent>> rows);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  [[nodiscard]] Exponent operator()(std::size_t i, std::size_t j) const noexcept {
    return t_[(i - 1) * cols_ + (j - 1)];
  }
  // Signed column difference t(i, a) - t(i, b); offsets in every solver
  // formula are built from these.
  [[nodiscard]] std::ptrdiff_t diff(std::size_t i, std::size_t a, std::size_t b) const noexcept {
    return static_cast<std::ptrdiff_t>((*this)(i, a)) - static_cast<std::ptrdiff_t>((*this)(i, b));
  }
  [[nodiscard]] std::span<const Exponent> row_major() const noexcept { return t_; }

  friend bool operator==(const ShiftMatrix&, const ShiftMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Exponent> t_;
};

/// t(i, j) = (i-1)(j-1).
[[nodiscard]] ShiftMatrix vandermonde(std::size_t n, std::size_t d);

/// Refined increasing difference property, checked through adjacent
/// differences in O(nd).
[[nodiscard]] bool check_rid(const ShiftMatrix& m) noexcept;
/// Same predicate straight from the definition, O(n^2 d^2).
[[nodiscard]] bool check_rid_naive(const ShiftMatrix& m) noexcept;

/// Rows and columns given as strictly ascending 1-based index lists.
[[nodiscard]] ShiftMatrix submatrix(const ShiftMatrix& m, std::span<const std::size_t> row_idx,
                                    std::span<const std::size_t> col_idx);

/// Iteration schedule of the elimination for a k x k RID system.
struct PhasePlan {
  std::size_t k = 0;
  std::size_t length = 0;
  std::vector<std::size_t> phase_len;  // L_1..L_k, 0-based storage
  std::vector<std::size_t> prefix;     // prefix[b] = L_1 + ... + L_b; prefix[0] = 0

  [[nodiscard]] std::size_t total_iterations() const noexcept { return prefix.back(); }
};

/// L_b = t(k-b, b+1) - t(k-b, b) for b < k, and L_k = length.
/// Throws ParameterError for non-square or non-RID input.
[[nodiscard]] PhasePlan phase_plan(const ShiftMatrix& m, std::size_t length);

/// Node indices held in the descending order i_1 > i_2 > ... > i_k that the
/// decode and repair schemes use. Rank v (1-based) names node i_v.
///
/// Every k x k system built from such a set has its rows in ascending node
/// order, so unknown v of the system is read from row k+1-v, i.e. from the
/// rank-v node. system_matrix() and the solvers rely on that mapping; callers
/// never compute it themselves.
class DescendingNodes {
 public:
  DescendingNodes() = default;
  // Accepts any order; rejects zero and duplicates.
  explicit DescendingNodes(std::vector<std::size_t> nodes);

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] std::size_t node(std::size_t rank) const noexcept { return nodes_[rank - 1]; }
  [[nodiscard]] std::span<const std::size_t> descending() const noexcept { return nodes_; }
  [[nodiscard]] std::vector<std::size_t> ascending() const;
  [[nodiscard]] bool contains(std::size_t node) const noexcept;
  // Ranks 1..first only.
  [[nodiscard]] DescendingNodes leading(std::size_t count) const;
  // Drops the node at `rank`.
  [[nodiscard]] DescendingNodes without_rank(std::size_t rank) const;

 private:
  std::vector<std::size_t> nodes_;
};

/// The exponent matrix of the system formed by the given nodes (rows, in
/// ascending order) and columns 1..cols of `gen`.
[[nodiscard]] ShiftMatrix system_matrix(const ShiftMatrix& gen, const DescendingNodes& nodes,
                                        std::size_t cols);

/// A random matrix with the RID property: row 1 gets nonnegative column
/// increments and every following row strictly larger ones, plus an arbitrary
/// first column. max_slack bounds the extra increment per step.
[[nodiscard]] ShiftMatrix random_rid(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                     Exponent max_slack = 2);

/// Rows of space-separated integers, one matrix row per line.
[[nodiscard]] std::string format_matrix(const ShiftMatrix& m);
/// Parses `rows` lines of `cols` integers from the stream.
[[nodiscard]] ShiftMatrix parse_matrix(std::istream& in, std::size_t rows, std::size_t cols);

}  // namespace sxrc
