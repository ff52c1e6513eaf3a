#include <gtest/gtest.h>

#include <random>

#include "sxrc/alloc_probe.hpp"
#include "sxrc/bounds.hpp"
#include "sxrc/errors.hpp"
#include "sxrc/mbr.hpp"
#include "test_util.hpp"

using sxrc::BitSeq;
using sxrc::DescendingNodes;
using sxrc::MbrCode;
using sxrc::MbrMessage;
using sxrc::NodeShare;
using sxrc::testing::pattern_message;
using sxrc::testing::random_message;
using sxrc::testing::subsets;
using sxrc::testing::subsets_without;

namespace {

std::vector<NodeShare> encode_all(const MbrMessage& msg, const MbrCode& code) {
  std::vector<NodeShare> shares;
  for (std::size_t i = 1; i <= code.n(); ++i) shares.push_back(mbr_encode(msg, code, i));
  return shares;
}

sxrc::MbrRetrieved retrieve(const std::vector<NodeShare>& shares, const DescendingNodes& nodes,
                            const MbrCode& code) {
  sxrc::MbrRetrieved mhat(code.k(), code.d());
  for (std::size_t v = 1; v <= code.k(); ++v) {
    auto sent = mbr_extract_for_decode(shares[nodes.node(v) - 1], v, code);
    for (std::size_t u = v; u <= code.d(); ++u) mhat.at(v, u) = std::move(sent[u - v]);
  }
  return mhat;
}

NodeShare repair(const std::vector<NodeShare>& shares, std::size_t failed, const DescendingNodes& helpers,
                 const MbrCode& code, sxrc::CostLedger* ledger, std::uint64_t* bits = nullptr) {
  std::vector<BitSeq> rhat;
  for (std::size_t v = 1; v <= code.d(); ++v) {
    rhat.push_back(mbr_repair_helper(shares[helpers.node(v) - 1], failed, v, code, ledger));
    if (bits != nullptr) *bits += rhat.back().size();
  }
  return mbr_repair(std::move(rhat), helpers, failed, code, ledger);
}

}  // namespace

TEST(MbrCode, ParametersAndValidation) {
  const auto code = MbrCode::vandermonde(6, 3, 4, 16);
  EXPECT_EQ(code.message_count(), 9u);
  EXPECT_EQ(code.alpha(), 4u);
  EXPECT_EQ(code.share_seq_length(3), 16u + 6u);
  EXPECT_EQ(MbrCode::vandermonde(5, 3, 3, 4).message_count(), 6u);
  EXPECT_THROW(MbrCode::vandermonde(6, 4, 3, 4), sxrc::ParameterError);
  EXPECT_THROW(MbrCode::vandermonde(4, 3, 4, 4), sxrc::ParameterError);
  EXPECT_THROW(MbrCode::vandermonde(6, 3, 4, 0), sxrc::ParameterError);
  EXPECT_THROW(MbrCode(3, 1, 2, 4, sxrc::ShiftMatrix{{0, 1}, {0, 1}, {0, 2}}), sxrc::ParameterError);
}

TEST(MbrMessage, PackLayout) {
  const auto code = MbrCode::vandermonde(6, 3, 4, 5);
  const auto msgs = pattern_message(9, 5);
  const auto m = MbrMessage::pack(msgs, code);
  // S = ((x1,x2,x3),(x2,x4,x5),(x3,x5,x6)), T = (x7,x8,x9)'.
  const std::size_t s[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  for (std::size_t i = 1; i <= 3; ++i) {
    for (std::size_t j = 1; j <= 3; ++j) EXPECT_EQ(*m.entry(i, j), msgs[s[i - 1][j - 1]]);
    EXPECT_EQ(*m.entry(i, 4), msgs[6 + i - 1]);
    EXPECT_EQ(m.entry(4, i), m.entry(i, 4));
  }
  EXPECT_EQ(m.entry(2, 1), m.entry(1, 2));
  EXPECT_EQ(m.entry(4, 4), nullptr);
  EXPECT_THROW(MbrMessage::pack(pattern_message(8, 5), code), sxrc::ParameterError);
  EXPECT_THROW(MbrMessage::pack(pattern_message(9, 4), code), sxrc::ParameterError);
}

TEST(MbrMessage, SquareCaseHasNoT) {
  const auto code = MbrCode::vandermonde(4, 3, 3, 5);
  const auto m = MbrMessage::pack(pattern_message(6, 5), code);
  EXPECT_EQ(m.sequences().size(), 6u);
  EXPECT_NE(m.entry(3, 3), nullptr);
}

TEST(MbrEncode, KnownAnswer) {
  // Frozen from tests/oracle/derive.py.
  const auto code = MbrCode::vandermonde(6, 3, 4, 8);
  const auto m = MbrMessage::pack(pattern_message(9, 8), code);
  const std::vector<std::string> node1{"11111011", "11110000", "01100100", "11011110"};
  const std::vector<std::string> node3{"10111110100011", "01000000000001", "00100100101100", "00011000000000"};
  const auto y1 = mbr_encode(m, code, 1);
  const auto y3 = mbr_encode(m, code, 3);
  for (std::size_t u = 0; u < 4; ++u) {
    EXPECT_EQ(y1.seqs[u].to_string(), node1[u]);
    EXPECT_EQ(y3.seqs[u].to_string(), node3[u]);
  }
}

TEST(MbrEncode, ClosedForms) {
  std::mt19937_64 rng(61);
  const auto code = MbrCode::vandermonde(6, 3, 4, 20);
  const auto x = random_message(9, 20, rng);
  const auto m = MbrMessage::pack(x, code);
  for (std::size_t i = 1; i <= 6; ++i) {
    const auto share = mbr_encode(m, code, i);
    ASSERT_EQ(share.seqs.size(), 4u);
    const auto s = i - 1;
    auto expect = x[6] + shift_pad(x[7], s) + shift_pad(x[8], 2 * s);
    expect.resize(20 + 3 * s);
    EXPECT_EQ(share.seqs[3], expect);
    for (const auto& y : share.seqs) EXPECT_EQ(y.size(), 20 + 3 * s);
  }
  EXPECT_EQ(mbr_encode(m, code, 1).seqs[0], x[0] + x[1] + x[2] + x[6]);
  const auto zero = MbrMessage::pack(std::vector<BitSeq>(9, BitSeq(20)), code);
  for (const auto& y : mbr_encode(zero, code, 5).seqs) EXPECT_TRUE(y.is_zero());
}

TEST(MbrExtract, WindowsAndTotals) {
  std::mt19937_64 rng(67);
  const std::size_t L = 11;
  const auto code = MbrCode::vandermonde(6, 3, 4, L);
  const auto shares = encode_all(MbrMessage::pack(random_message(9, L, rng), code), code);
  const DescendingNodes nodes({4, 3, 1});
  const auto sent = mbr_extract_for_decode(shares[2], 2, code);
  ASSERT_EQ(sent.size(), 3u);
  for (std::size_t u = 2; u <= 4; ++u) EXPECT_EQ(sent[u - 2], subseq(shares[2].seqs[u - 1], 3, L + 2));
  EXPECT_EQ(mbr_extract_for_decode(shares[3], 1, code).size(), 4u);
  std::size_t bits = 0;
  for (std::size_t v = 1; v <= 3; ++v) {
    for (const auto& s : mbr_extract_for_decode(shares[nodes.node(v) - 1], v, code)) bits += s.size();
  }
  EXPECT_EQ(bits, code.message_count() * L);
}

TEST(MbrDecode, StepOneSystemOffsets) {
  // mhat_{2,4}[l] = m_{2,4}[l] + m_{1,4}[l+2] + m_{3,4}[l-2] for nodes {4,3,1}.
  std::mt19937_64 rng(71);
  const std::size_t L = 30;
  const auto code = MbrCode::vandermonde(6, 3, 4, L);
  const auto x = random_message(9, L, rng);
  const auto shares = encode_all(MbrMessage::pack(x, code), code);
  const auto mhat = retrieve(shares, DescendingNodes({4, 3, 1}), code);
  for (std::size_t l = 1; l <= L; ++l) {
    ASSERT_EQ(mhat.at(2, 4).get(l), x[7].get(l) ^ x[6].get(l + 2) ^ x[8].get(l - 2)) << l;
  }
}

TEST(MbrDecode, AllSubsetsRoundTrip) {
  std::mt19937_64 rng(73);
  for (std::size_t L : {1, 7, 64, 200}) {
    const auto code = MbrCode::vandermonde(6, 3, 4, L);
    const auto x = random_message(9, L, rng);
    const auto shares = encode_all(MbrMessage::pack(x, code), code);
    for (const auto& set : subsets(6, 3)) {
      const DescendingNodes nodes(set);
      sxrc::CostLedger ledger;
      ASSERT_EQ(mbr_decode(retrieve(shares, nodes, code), nodes, code, &ledger), x) << "L=" << L;
      ASSERT_LT(static_cast<double>(ledger.snapshot().xor_bit_ops), sxrc::bounds::mbr_decode_xor_bound(3, 4, L));
      sxrc::CostLedger batched;
      ASSERT_EQ(mbr_decode(retrieve(shares, nodes, code), nodes, code, &batched,
                           {2, sxrc::BackSubstitution::kWordBatched}),
                x);
      ASSERT_EQ(batched.snapshot().xor_bit_ops, ledger.snapshot().xor_bit_ops);
    }
  }
}

TEST(MbrDecode, RandomCodesRoundTrip) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 150; ++trial) {
    const auto d = 1 + rng() % 6;
    const auto k = 1 + rng() % d;
    const auto n = d + 1 + rng() % (8 - d);
    const auto L = 1 + rng() % 70;
    const MbrCode code(n, k, d, L, sxrc::random_rid(n, d, rng, 3));
    const auto x = random_message(code.message_count(), L, rng);
    const auto shares = encode_all(MbrMessage::pack(x, code), code);
    const auto all = subsets(n, k);
    const DescendingNodes nodes(all[rng() % all.size()]);
    sxrc::CostLedger ledger;
    ASSERT_EQ(mbr_decode(retrieve(shares, nodes, code), nodes, code, &ledger), x)
        << "n=" << n << " k=" << k << " d=" << d << " L=" << L;
    const auto xors = static_cast<double>(ledger.snapshot().xor_bit_ops);
    if (k >= 2) {
      ASSERT_LT(xors, sxrc::bounds::mbr_decode_xor_bound(k, d, L));
    } else {
      ASSERT_LE(xors, sxrc::bounds::mbr_decode_xor_bound(k, d, L));
    }
  }
}

TEST(MbrDecode, InPlace) {
  std::mt19937_64 rng(83);
  const std::size_t L = 4096;
  const auto code = MbrCode::vandermonde(6, 3, 4, L);
  const auto shares = encode_all(MbrMessage::pack(random_message(9, L, rng), code), code);
  const DescendingNodes nodes({6, 2, 5});
  auto mhat = retrieve(shares, nodes, code);
  sxrc::SeqAllocProbe probe;
  mbr_decode_in_place(mhat, nodes, code, nullptr);
  EXPECT_EQ(probe.allocated_bytes(), 0u);
}

TEST(MbrDecode, RejectsBadInput) {
  const auto code = MbrCode::vandermonde(6, 3, 4, 8);
  sxrc::MbrRetrieved mhat(3, 4);
  EXPECT_THROW(mbr_decode_in_place(mhat, DescendingNodes({1, 2}), code, nullptr), sxrc::ParameterError);
  EXPECT_THROW(mbr_decode_in_place(mhat, DescendingNodes({1, 2, 3}), code, nullptr), sxrc::ContractError);
}

TEST(MbrRepair, HelperWindows) {
  std::mt19937_64 rng(89);
  const std::size_t L = 13;
  const auto code = MbrCode::vandermonde(6, 3, 4, L);
  const auto shares = encode_all(MbrMessage::pack(random_message(9, L, rng), code), code);
  const auto r4 = sxrc::BitRange{4, L + 9};
  EXPECT_EQ(mbr_repair_range(code, 4, 2, 3), r4);
  // Helper 1 (all shifts zero) sends r_1 = y_{1,1} + z^2 y_{1,2} + z^4 y_{1,3} + z^6 y_{1,4} whole.
  const auto& y = shares[0].seqs;
  const auto r1 = y[0] + shift_pad(y[1], 2) + shift_pad(y[2], 4) + shift_pad(y[3], 6);
  EXPECT_EQ(mbr_repair_helper(shares[0], 3, 4, code), r1);
  // Helper 4 at rank 2 sends r_4[4 : L+9].
  const auto& w = shares[3].seqs;
  const auto full4 = w[0] + shift_pad(w[1], 2) + shift_pad(w[2], 4) + shift_pad(w[3], 6);
  EXPECT_EQ(mbr_repair_helper(shares[3], 3, 2, code), subseq(full4, 4, L + 9));
  EXPECT_THROW((void)mbr_repair_helper(shares[2], 3, 1, code), sxrc::ParameterError);
}

TEST(MbrRepair, ExhaustiveExactRepair) {
  std::mt19937_64 rng(97);
  for (std::size_t L : {1, 9, 100}) {
    const auto code = MbrCode::vandermonde(6, 3, 4, L);
    const auto shares = encode_all(MbrMessage::pack(random_message(9, L, rng), code), code);
    for (std::size_t i = 1; i <= 6; ++i) {
      for (const auto& set : subsets_without(6, 4, i)) {
        sxrc::CostLedger ledger;
        std::uint64_t bits = 0;
        const auto got = repair(shares, i, DescendingNodes(set), code, &ledger, &bits);
        ASSERT_EQ(got, shares[i - 1]) << "i=" << i << " L=" << L;
        ASSERT_EQ(bits, 4 * (L + 3 * (i - 1)));
        ASSERT_LE(static_cast<double>(ledger.snapshot().xor_bit_ops), sxrc::bounds::mbr_repair_xor_bound(code, i));
      }
    }
  }
}

TEST(MbrRepair, RandomCodesAndInPlace) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 80; ++trial) {
    const auto d = 1 + rng() % 6;
    const auto k = 1 + rng() % d;
    const auto n = d + 1 + rng() % (8 - d);
    const auto L = 1 + rng() % 50;
    const MbrCode code(n, k, d, L, sxrc::random_rid(n, d, rng, 3));
    const auto shares = encode_all(MbrMessage::pack(random_message(code.message_count(), L, rng), code), code);
    const auto failed = 1 + rng() % n;
    const auto sets = subsets_without(n, d, failed);
    const DescendingNodes helpers(sets[rng() % sets.size()]);
    std::vector<BitSeq> rhat;
    for (std::size_t v = 1; v <= d; ++v) rhat.push_back(mbr_repair_helper(shares[helpers.node(v) - 1], failed, v, code));
    sxrc::SeqAllocProbe probe;
    const auto got = mbr_repair(std::move(rhat), helpers, failed, code, nullptr);
    ASSERT_EQ(probe.allocated_bytes(), 0u);
    ASSERT_EQ(got, shares[failed - 1]);
  }
}

TEST(MbrRepair, RejectsBadHelperSets) {
  const auto code = MbrCode::vandermonde(6, 3, 4, 8);
  std::vector<BitSeq> rhat(4, BitSeq(14));
  EXPECT_THROW((void)mbr_repair(rhat, DescendingNodes({1, 2, 4}), 3, code, nullptr), sxrc::ParameterError);
  EXPECT_THROW((void)mbr_repair(rhat, DescendingNodes({1, 2, 3, 4}), 3, code, nullptr), sxrc::ParameterError);
}

TEST(MbrRepair, ZeroSharesGiveZero) {
  const auto code = MbrCode::vandermonde(6, 3, 4, 8);
  const auto zero = MbrMessage::pack(std::vector<BitSeq>(9, BitSeq(8)), code);
  EXPECT_TRUE(mbr_repair_helper(mbr_encode(zero, code, 2), 3, 1, code).is_zero());
}
