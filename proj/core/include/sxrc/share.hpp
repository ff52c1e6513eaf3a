#pragma once

#include <cstddef>
#include <vector>

#include "sxrc/bitseq.hpp"

namespace sxrc {

// One storage node's coded sequences. The unit that is persisted, transferred
// and repaired.
struct NodeShare {
  std::size_t node = 0;
  std::vector<BitSeq> seqs;

  friend bool operator==(const NodeShare&, const NodeShare&) = default;
};

// Inclusive 1-based bit range within a stored sequence.
struct BitRange {
  std::size_t from = 1;
  std::size_t to = 0;

  [[nodiscard]] std::size_t size() const noexcept { return to >= from ? to - from + 1 : 0; }
  friend bool operator==(const BitRange&, const BitRange&) = default;
};

}  // namespace sxrc
