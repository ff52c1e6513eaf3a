#include "sxrc/shift_matrix.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "sxrc/errors.hpp"

namespace sxrc {

ShiftMatrix::ShiftMatrix(std::size_t rows, std::size_t cols, std::vector<Exponent> row_major)
    : rows_(rows), cols_(cols), t_(std::move(row_major)) {
  if (rows == 0 || cols == 0) throw ParameterError("shift matrix must be at least 1x1");
  if (t_.size() != rows * cols) throw ParameterError("shift matrix entry count mismatch");
}

ShiftMatrix::ShiftMatrix(std::initializer_list<std::initializer_list<Exponent>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw ParameterError("shift matrix must be at least 1x1");
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ParameterError("ragged shift matrix");
    t_.insert(t_.end(), r.begin(), r.end());
  }
}

ShiftMatrix vandermonde(std::size_t n, std::size_t d) {
  std::vector<Exponent> t(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) t[i * d + j] = static_cast<Exponent>(i * j);
  }
  return ShiftMatrix(n, d, std::move(t));
}

bool check_rid(const ShiftMatrix& m) noexcept {
  // Row i's column increments must strictly exceed row i-1's, and row 1's must
  // be nonnegative. With a single row (or column) the definition is vacuous.
  const auto n = m.rows();
  const auto d = m.cols();
  if (n < 2 || d < 2) return true;
  for (std::size_t j = 1; j < d; ++j) {
    if (m.diff(1, j + 1, j) < 0) return false;
    for (std::size_t i = 2; i <= n; ++i) {
      if (m.diff(i, j + 1, j) <= m.diff(i - 1, j + 1, j)) return false;
    }
  }
  return true;
}

bool check_rid_naive(const ShiftMatrix& m) noexcept {
  const auto n = m.rows();
  const auto d = m.cols();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t ip = i + 1; ip <= n; ++ip) {
      for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t jp = j + 1; jp <= d; ++jp) {
          const auto lhs = m.diff(i, jp, j);
          const auto rhs = m.diff(ip, jp, j);
          if (lhs < 0 || lhs >= rhs) return false;
          if (lhs == 0 && i != 1) return false;
        }
      }
    }
  }
  return true;
}

namespace {
void require_ascending(std::span<const std::size_t> idx, std::size_t limit, const char* what) {
  if (idx.empty()) throw ParameterError(std::string("empty ") + what + " index list");
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] == 0 || idx[a] > limit) throw ParameterError(std::string(what) + " index out of range");
    if (a > 0 && idx[a] <= idx[a - 1]) throw ParameterError(std::string(what) + " indices not ascending");
  }
}
}  // namespace

ShiftMatrix submatrix(const ShiftMatrix& m, std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) {
  require_ascending(row_idx, m.rows(), "row");
  require_ascending(col_idx, m.cols(), "column");
  std::vector<Exponent> t;
  t.reserve(row_idx.size() * col_idx.size());
  for (auto r : row_idx) {
    for (auto c : col_idx) t.push_back(m(r, c));
  }
  return ShiftMatrix(row_idx.size(), col_idx.size(), std::move(t));
}

PhasePlan phase_plan(const ShiftMatrix& m, std::size_t length) {
  if (!m.square()) throw ParameterError("phase plan needs a square system");
  if (!check_rid(m)) throw ParameterError("phase plan needs an RID exponent matrix");
  if (length == 0) throw ParameterError("unknown length must be positive");
  PhasePlan plan;
  plan.k = m.rows();
  plan.length = length;
  plan.phase_len.resize(plan.k);
  plan.prefix.assign(plan.k + 1, 0);
  for (std::size_t b = 1; b <= plan.k; ++b) {
    plan.phase_len[b - 1] =
        b < plan.k ? static_cast<std::size_t>(m.diff(plan.k - b, b + 1, b)) : length;
    plan.prefix[b] = plan.prefix[b - 1] + plan.phase_len[b - 1];
  }
  return plan;
}

DescendingNodes::DescendingNodes(std::vector<std::size_t> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(), std::greater<>());
  if (!nodes_.empty() && nodes_.back() == 0) throw ParameterError("node indices are 1-based");
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw ParameterError("duplicate node index");
  }
}

std::vector<std::size_t> DescendingNodes::ascending() const {
  return {nodes_.rbegin(), nodes_.rend()};
}

bool DescendingNodes::contains(std::size_t node) const noexcept {
  return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

DescendingNodes DescendingNodes::leading(std::size_t count) const {
  if (count > nodes_.size()) throw ContractError("leading(): count exceeds node set size");
  return DescendingNodes(std::vector<std::size_t>(nodes_.begin(), nodes_.begin() + count));
}

DescendingNodes DescendingNodes::without_rank(std::size_t rank) const {
  if (rank == 0 || rank > nodes_.size()) throw ContractError("without_rank(): rank out of range");
  auto copy = nodes_;
  copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(rank - 1));
  return DescendingNodes(std::move(copy));
}

ShiftMatrix system_matrix(const ShiftMatrix& gen, const DescendingNodes& nodes, std::size_t cols) {
  std::vector<std::size_t> col_idx(cols);
  for (std::size_t j = 0; j < cols; ++j) col_idx[j] = j + 1;
  const auto rows = nodes.ascending();
  return submatrix(gen, rows, col_idx);
}

ShiftMatrix random_rid(std::size_t n, std::size_t d, std::mt19937_64& rng, Exponent max_slack) {
  std::uniform_int_distribution<Exponent> slack(0, max_slack);
  std::uniform_int_distribution<Exponent> base(0, 3);
  std::vector<Exponent> t(n * d);
  std::vector<Exponent> inc(d > 1 ? d - 1 : 0);
  for (auto& x : inc) x = slack(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      for (auto& x : inc) x += 1 + slack(rng);
    }
    t[i * d] = base(rng);
    for (std::size_t j = 1; j < d; ++j) t[i * d + j] = t[i * d + j - 1] + inc[j - 1];
  }
  return ShiftMatrix(n, d, std::move(t));
}

std::string format_matrix(const ShiftMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      if (j > 1) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

ShiftMatrix parse_matrix(std::istream& in, std::size_t rows, std::size_t cols) {
  std::vector<Exponent> t(rows * cols);
  for (auto& x : t) {
    long long v = -1;
    if (!(in >> v) || v < 0 || v > static_cast<long long>(UINT32_MAX)) {
      throw FormatError("exponent matrix: expected a nonnegative integer");
    }
    x = static_cast<Exponent>(v);
  }
  return ShiftMatrix(rows, cols, std::move(t));
}

}  // namespace sxrc
