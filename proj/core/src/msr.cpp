#include "sxrc/msr.hpp"

#include <utility>

#include "sxrc/errors.hpp"
#include "sxrc/parallel.hpp"

namespace sxrc {
namespace {

void check_node(const MsrCode& code, std::size_t node) {
  if (node == 0 || node > code.n()) throw ParameterError("node index out of range");
}

ShiftMatrix composite(const ShiftMatrix& phi, std::span<const Exponent> lambda) {
  const auto n = phi.rows();
  const auto a = phi.cols();
  std::vector<Exponent> t;
  t.reserve(n * 2 * a);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= a; ++j) t.push_back(phi(i, j));
    for (std::size_t j = 1; j <= a; ++j) t.push_back(lambda[i - 1] + phi(i, j));
  }
  return ShiftMatrix(n, 2 * a, std::move(t));
}

DescendingNodes share_nodes(std::span<const NodeShare> shares) {
  std::vector<std::size_t> ids;
  ids.reserve(shares.size());
  for (const auto& s : shares) ids.push_back(s.node);
  return DescendingNodes(std::move(ids));
}

}  // namespace

MsrCode::MsrCode(std::size_t n, std::size_t k, std::size_t d, std::size_t length, ShiftMatrix phi,
                 std::vector<Exponent> lambda)
    : n_(n), k_(k), length_(length), phi_(std::move(phi)), lambda_(std::move(lambda)) {
  if (k < 2) throw ParameterError("MSR needs k >= 2");
  if (d != 2 * k - 2) throw ParameterError("only d = 2k-2 MSR codes are supported");
  if (d >= n) throw ParameterError("MSR needs d < n");
  if (length == 0) throw ParameterError("sequence length must be positive");
  if (phi_.rows() != n || phi_.cols() != alpha()) throw ParameterError("MSR Phi must be n x alpha");
  if (lambda_.size() != n) throw ParameterError("MSR needs one lambda per node");
  psi_ = composite(phi_, lambda_);
  if (!check_rid(psi_)) throw ParameterError("composite MSR generator lacks the RID property");
}

MsrCode MsrCode::vandermonde(std::size_t n, std::size_t k, std::size_t length) {
  if (k < 2 || n == 0) throw ParameterError("MSR needs k >= 2");
  const auto a = k - 1;
  std::vector<Exponent> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = static_cast<Exponent>(i * a);
  return MsrCode(n, k, 2 * a, length, sxrc::vandermonde(n, a), std::move(lambda));
}

std::size_t MsrCode::share_seq_length(std::size_t node) const {
  check_node(*this, node);
  return length_ + phi_(node, alpha()) + lambda_[node - 1];
}

std::size_t symmetric_index(std::size_t alpha, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i > alpha || j > alpha) throw ContractError("symmetric index out of range");
  if (i > j) std::swap(i, j);
  return (i - 1) * alpha - (i - 1) * (i - 2) / 2 + (j - i);
}

MsrMessage MsrMessage::pack(std::vector<BitSeq> msgs, const MsrCode& code) {
  if (msgs.size() != code.message_count()) throw ParameterError("MSR message needs exactly B sequences");
  for (const auto& m : msgs) {
    if (m.size() != code.length()) throw ParameterError("every message sequence must hold L bits");
  }
  return MsrMessage(code.alpha(), code.length(), std::move(msgs));
}

const BitSeq& MsrMessage::s(std::size_t i, std::size_t j) const { return msgs_[symmetric_index(alpha_, i, j)]; }

const BitSeq& MsrMessage::t(std::size_t i, std::size_t j) const {
  return msgs_[alpha_ * (alpha_ + 1) / 2 + symmetric_index(alpha_, i, j)];
}

NodeShare msr_encode(const MsrMessage& msg, const MsrCode& code, std::size_t node, CostLedger* ledger) {
  check_node(code, node);
  if (msg.length() != code.length() || msg.alpha() != code.alpha()) {
    throw ParameterError("message does not match the code");
  }
  const auto a = code.alpha();
  const auto& phi = code.phi();
  const auto lam = static_cast<std::ptrdiff_t>(code.lambda(node));
  NodeShare share{node, {}};
  share.seqs.reserve(a);
  for (std::size_t j = 1; j <= a; ++j) {
    BitSeq y(code.share_seq_length(node));
    for (std::size_t r = 1; r <= a; ++r) {
      xor_shifted(y, msg.s(r, j), phi(node, r), r == 1 ? nullptr : ledger);
    }
    for (std::size_t r = 1; r <= a; ++r) {
      xor_shifted(y, msg.t(r, j), lam + static_cast<std::ptrdiff_t>(phi(node, r)), ledger);
    }
    share.seqs.push_back(std::move(y));
  }
  return share;
}

BitSeq msr_c_hat(const NodeShare& share, std::size_t partner, const MsrCode& code, CostLedger* ledger) {
  const auto self = share.node;
  check_node(code, self);
  check_node(code, partner);
  if (self == partner) throw ContractError("c-hat needs two distinct nodes");
  if (code.lambda(self) == code.lambda(partner)) throw ParameterError("lambda collision between nodes");
  const auto a = code.alpha();
  if (share.seqs.size() != a) throw ParameterError("share does not hold alpha sequences");
  const auto& phi = code.phi();
  const auto off = static_cast<std::ptrdiff_t>(code.lambda(self) < code.lambda(partner) ? code.lambda(self) : 0);
  BitSeq out(code.length() + phi(self, a) + phi(partner, a));
  for (std::size_t j = 1; j <= a; ++j) {
    xor_shifted(out, share.seqs[j - 1], static_cast<std::ptrdiff_t>(phi(partner, j)) - off,
                j == 1 ? nullptr : ledger);
  }
  return out;
}

PairTable msr_c_hats(std::span<const NodeShare> shares, const DescendingNodes& nodes, const MsrCode& code,
                     CostLedger* ledger) {
  const auto k = code.k();
  if (nodes.size() != k || shares.size() != k) throw ParameterError("decoding needs exactly k distinct nodes");
  PairTable chat(k);
  for (std::size_t u = 1; u <= k; ++u) {
    const NodeShare* share = nullptr;
    for (const auto& s : shares) {
      if (s.node == nodes.node(u)) share = &s;
    }
    if (share == nullptr) throw ContractError("share missing for a decode node");
    for (std::size_t v = 1; v <= k; ++v) {
      if (v != u) chat.at(u, v) = msr_c_hat(*share, nodes.node(v), code, ledger);
    }
  }
  return chat;
}

MsrStep1Result msr_step1(PairTable chat, const DescendingNodes& nodes, const MsrCode& code, CostLedger* ledger,
                         std::size_t jobs) {
  const auto k = code.k();
  const auto a = code.alpha();
  if (chat.k() != k || nodes.size() != k) throw ContractError("pair table shape does not match the code");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (u, v), u > v
  for (std::size_t u = 2; u <= k; ++u) {
    for (std::size_t v = 1; v < u; ++v) pairs.emplace_back(u, v);
  }
  // Rank u > v means i_u < i_v and lambda_{i_u} < lambda_{i_v}: node i_u is the
  // top row. Unknown 1 (p) is read unshifted from node i_v, unknown 2 (q) from
  // node i_u at offset lambda_{i_u}.
  detail::parallel_for(pairs.size(), jobs, [&](std::size_t idx) {
    const auto [u, v] = pairs[idx];
    const auto lo = code.lambda(nodes.node(u));
    const auto hi = code.lambda(nodes.node(v));
    if (lo >= hi) throw ParameterError("lambda must increase with the node index");
    const ShiftMatrix sys{{0, lo}, {0, hi}};
    const auto len = code.length() + code.phi()(nodes.node(u), a) + code.phi()(nodes.node(v), a);
    BitSeq* xs[2] = {&chat.at(v, u), &chat.at(u, v)};
    shift_xor_eliminate(sys, len, xs, ledger);
  });
  MsrStep1Result out{PairTable(k), PairTable(k)};
  for (const auto& [u, v] : pairs) {
    out.p.at(u, v) = std::move(chat.at(v, u));
    out.q.at(u, v) = std::move(chat.at(u, v));
  }
  // Step 2 reads (u, v) for every v <= alpha, so pairs with both ranks <= alpha
  // need the transposed slot too. Copies, since Step 2 narrows each slot
  // differently.
  for (const auto& [u, v] : pairs) {
    if (u <= a) {
      out.p.at(v, u) = out.p.at(u, v);
      out.q.at(v, u) = out.q.at(u, v);
    }
  }
  return out;
}

std::vector<BitSeq> msr_step2(PairTable& block, const DescendingNodes& nodes, const MsrCode& code,
                              CostLedger* ledger, std::size_t jobs) {
  const auto k = code.k();
  const auto a = code.alpha();
  const auto L = code.length();
  const auto& phi = code.phi();
  if (block.k() != k || nodes.size() != k) throw ContractError("pair table shape does not match the code");
  // Equation j of system v comes from the j-th rank other than v.
  const auto other_rank = [](std::size_t v, std::size_t j) { return j < v ? j : j + 1; };

  // Systems S~^v: p_{u,v} = sum_j z^t(i_u, j) s~_{v,j} over the ranks u != v.
  detail::parallel_for(a, jobs, [&](std::size_t c) {
    const auto v = c + 1;
    const auto sub = nodes.without_rank(v);
    const auto sys = system_matrix(phi, sub, a);
    const auto len = L + phi(nodes.node(v), a);
    std::vector<BitSeq*> xs(a);
    for (std::size_t j = 1; j <= a; ++j) {
      const auto u = other_rank(v, j);
      auto& buf = block.at(u, v);
      const std::size_t off = phi(nodes.node(u), j);
      if (buf.size() < off + len) throw ContractError("pair sequence shorter than its window");
      buf.narrow(off + 1, off + len);
      xs[j - 1] = &buf;
    }
    shift_xor_eliminate(sys, len, xs, ledger);
  });
  // block.at(other_rank(v, j), v) now holds s~_{v,j}.
  const auto stilde = [&](std::size_t v, std::size_t j) -> BitSeq& { return block.at(other_rank(v, j), v); };

  // Columns: s~_{j,u} = sum_r z^t(i_j, r) s_{r,u} over ranks 1..alpha.
  const auto sys = system_matrix(phi, nodes.leading(a), a);
  detail::parallel_for(a, jobs, [&](std::size_t c) {
    const auto u = c + 1;
    std::vector<BitSeq*> xs(a);
    for (std::size_t j = 1; j <= a; ++j) {
      auto& buf = stilde(j, u);
      const std::size_t off = phi(nodes.node(j), j);
      buf.narrow(off + 1, off + L);
      xs[j - 1] = &buf;
    }
    shift_xor_eliminate(sys, L, xs, ledger);
  });

  std::vector<BitSeq> out(a * (a + 1) / 2);
  for (std::size_t j = 1; j <= a; ++j) {
    for (std::size_t u = j; u <= a; ++u) out[symmetric_index(a, j, u)] = std::move(stilde(j, u));
  }
  return out;
}

std::vector<BitSeq> msr_decode(std::span<const NodeShare> shares, const MsrCode& code, CostLedger* ledger,
                               std::size_t jobs) {
  if (shares.size() != code.k()) throw ParameterError("decoding needs exactly k distinct nodes");
  const auto nodes = share_nodes(shares);
  for (const auto& s : shares) {
    check_node(code, s.node);
    if (s.seqs.size() != code.alpha()) throw ParameterError("share does not hold alpha sequences");
    for (const auto& y : s.seqs) {
      if (y.size() != code.share_seq_length(s.node)) throw ParameterError("share sequence has the wrong length");
    }
  }
  auto step1 = msr_step1(msr_c_hats(shares, nodes, code, ledger), nodes, code, ledger, jobs);
  auto s = msr_step2(step1.p, nodes, code, ledger, jobs);
  step1.p = PairTable(0);
  auto t = msr_step2(step1.q, nodes, code, ledger, jobs);
  s.reserve(s.size() + t.size());
  for (auto& x : t) s.push_back(std::move(x));
  return s;
}

BitRange msr_repair_range(const MsrCode& code, std::size_t helper, std::size_t rank, std::size_t failed) {
  check_node(code, helper);
  check_node(code, failed);
  if (helper == failed) throw ParameterError("a failed node cannot help repair itself");
  if (rank == 0 || rank > code.d()) throw ContractError("helper rank out of range");
  const std::size_t off = code.psi()(helper, rank);
  return {off + 1, off + code.length() + code.phi()(failed, code.alpha())};
}

BitSeq msr_repair_helper(const NodeShare& share, std::size_t failed, std::size_t rank, const MsrCode& code,
                         CostLedger* ledger) {
  const auto a = code.alpha();
  if (share.seqs.size() != a) throw ParameterError("share does not hold alpha sequences");
  const auto range = msr_repair_range(code, share.node, rank, failed);
  const auto off = static_cast<std::ptrdiff_t>(range.from - 1);
  BitSeq out(range.size());
  for (std::size_t j = 1; j <= a; ++j) {
    const auto delta = static_cast<std::ptrdiff_t>(code.phi()(failed, j)) - off;
    xor_shifted(out, share.seqs[j - 1], delta, j == 1 ? nullptr : ledger);
  }
  return out;
}

NodeShare msr_repair(std::vector<BitSeq> rhat, const DescendingNodes& helpers, std::size_t failed,
                     const MsrCode& code, CostLedger* ledger) {
  check_node(code, failed);
  const auto a = code.alpha();
  const auto d = code.d();
  if (helpers.size() != d) throw ParameterError("repair needs exactly d helpers");
  if (helpers.contains(failed)) throw ParameterError("a failed node cannot help repair itself");
  for (auto j : helpers.descending()) check_node(code, j);
  if (rhat.size() != d) throw ContractError("one helper subsequence per helper required");
  const auto len = code.length() + code.phi()(failed, a);
  std::vector<BitSeq*> xs;
  xs.reserve(d);
  for (auto& r : rhat) xs.push_back(&r);
  shift_xor_eliminate(system_matrix(code.psi(), helpers, d), len, xs, ledger);

  NodeShare share{failed, {}};
  share.seqs.reserve(a);
  const auto lam = static_cast<std::ptrdiff_t>(code.lambda(failed));
  for (std::size_t j = 1; j <= a; ++j) {
    BitSeq y(code.share_seq_length(failed));
    xor_shifted(y, rhat[j - 1], 0, nullptr);
    xor_shifted(y, rhat[j - 1 + a], lam, ledger);
    share.seqs.push_back(std::move(y));
  }
  return share;
}

}  // namespace sxrc
