// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <new>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sxrc/bounds.hpp"
#include "sxrc/errors.hpp"
#include "sxrc/harness.hpp"
#include "sxrc/mbr.hpp"
#include "sxrc/msr.hpp"
#include "sxrc/solver.hpp"
#include "sxrc/store.hpp"
#include "test_util.hpp"

// Global allocation hook. While armed, every request of at least
// `threshold` bytes is counted.
namespace {
std::atomic<bool> g_armed{false};
std::atomic<std::size_t> g_threshold{0};
std::atomic<std::size_t> g_big_count{0};
std::atomic<std::size_t> g_big_bytes{0};
std::atomic<std::size_t> g_largest{0};

void note_request(std::size_t n) noexcept {
  if (!g_armed.load(std::memory_order_relaxed)) return;
  auto cur = g_largest.load(std::memory_order_relaxed);
  while (cur < n && !g_largest.compare_exchange_weak(cur, n)) {
  }
  if (n >= g_threshold.load(std::memory_order_relaxed)) {
    g_big_count.fetch_add(1);
    g_big_bytes.fetch_add(n);
  }
}
}  // namespace

void* operator new(std::size_t n) {
  note_request(n);
  if (void* p = std::malloc(n == 0 ? 1 : n)) return p;
  throw std::bad_alloc();
}
void operator delete(void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }

namespace {

using sxrc::BitSeq;
using sxrc::CostLedger;
using sxrc::DescendingNodes;
using sxrc::MbrCode;
using sxrc::MsrCode;
using sxrc::NodeShare;
using sxrc::ShiftMatrix;
using sxrc::testing::random_message;
using sxrc::testing::subsets;

struct AllocWindow {
  explicit AllocWindow(std::size_t threshold) {
    g_threshold = threshold;
    g_big_count = 0;
    g_big_bytes = 0;
    g_largest = 0;
    g_armed = true;
  }
  ~AllocWindow() { g_armed = false; }
  AllocWindow(const AllocWindow&) = delete;
  AllocWindow& operator=(const AllocWindow&) = delete;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && first_.empty()) first_ = what;
    ok_ = ok_ && ok;
  }
  [[nodiscard]] bool ok() const { return ok_; }
  [[nodiscard]] const std::string& first() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

const std::size_t kLengths[] = {1, 7, 64, 1024};

sxrc::DistributedStore mbr_store(const MbrCode& code, const std::vector<BitSeq>& msg) {
  const auto packed = sxrc::MbrMessage::pack(msg, code);
  std::vector<NodeShare> shares;
  for (std::size_t i = 1; i <= code.n(); ++i) shares.push_back(sxrc::mbr_encode(packed, code, i));
  return {sxrc::CodeParams::of(code), std::move(shares)};
}

sxrc::DistributedStore msr_store(const MsrCode& code, const std::vector<BitSeq>& msg) {
  const auto packed = sxrc::MsrMessage::pack(msg, code);
  std::vector<NodeShare> shares;
  for (std::size_t i = 1; i <= code.n(); ++i) shares.push_back(sxrc::msr_encode(packed, code, i));
  return {sxrc::CodeParams::of(code), std::move(shares)};
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// 1. MBR decode round trip over all node subsets.
Outcome mbr_round_trip() {
  std::mt19937_64 rng(101);
  Failures f;
  std::size_t decodes = 0;
  const auto start = std::chrono::steady_clock::now();
  for (auto L : kLengths) {
    const auto code = MbrCode::vandermonde(6, 3, 4, L);
    const auto msg = random_message(code.message_count(), L, rng);
    const auto store = mbr_store(code, msg);
    for (const auto& nodes : subsets(6, 3)) {
      CostLedger ledger;
      const auto out = sxrc::harness_mbr_decode(store, code, nodes, ledger);
      f.check(out == msg, "mismatch L=" + std::to_string(L) + " nodes=" + join(nodes));
      f.check(ledger.snapshot().bits_transferred == 9 * L, "bandwidth L=" + std::to_string(L));
      ++decodes;
    }
  }
  const auto secs = seconds_since(start);
  f.check(secs < 5.0, "runtime");
  std::ostringstream os;
  os << decodes << " decodes exact, bandwidth 9L each, " << secs << " s (< 5 s)";
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

// 2. MSR decode round trip over all node subsets.
Outcome msr_round_trip() {
  std::mt19937_64 rng(102);
  Failures f;
  std::size_t decodes = 0;
  const auto start = std::chrono::steady_clock::now();
  for (auto L : kLengths) {
    const auto code = MsrCode::vandermonde(6, 3, L);
    const auto msg = random_message(code.message_count(), L, rng);
    const auto store = msr_store(code, msg);
    for (const auto& nodes : subsets(6, 3)) {
      CostLedger ledger;
      const auto out = sxrc::harness_msr_decode(store, code, nodes, ledger);
      std::uint64_t expected = 0;
      for (auto i : nodes) expected += 2 * (L + 3 * (i - 1));
      f.check(out == msg, "mismatch L=" + std::to_string(L) + " nodes=" + join(nodes));
      f.check(ledger.snapshot().bits_transferred == expected, "bandwidth L=" + std::to_string(L));
      ++decodes;
    }
  }
  const auto secs = seconds_since(start);
  f.check(secs < 5.0, "runtime");
  std::ostringstream os;
  os << decodes << " decodes exact, bandwidth sum 2(L+3(i-1)), " << secs << " s (< 5 s)";
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

// 3. Exact repair of every node from every helper set, both codes.
Outcome exact_repair() {
  std::mt19937_64 rng(103);
  Failures f;
  std::size_t repairs = 0;
  const auto start = std::chrono::steady_clock::now();
  for (auto L : kLengths) {
    const auto mbr = MbrCode::vandermonde(6, 3, 4, L);
    const auto msr = MsrCode::vandermonde(6, 3, L);
    const auto ms = mbr_store(mbr, random_message(mbr.message_count(), L, rng));
    const auto ss = msr_store(msr, random_message(msr.message_count(), L, rng));
    for (std::size_t i = 1; i <= 6; ++i) {
      for (const auto& helpers : sxrc::testing::subsets_without(6, 4, i)) {
        const auto tag = " L=" + std::to_string(L) + " i=" + std::to_string(i) + " helpers=" + join(helpers);
        CostLedger a;
        f.check(sxrc::harness_mbr_repair(ms, mbr, i, helpers, a) == ms.local_share(i), "mbr share" + tag);
        f.check(a.snapshot().bits_transferred == 4 * (L + 3 * (i - 1)), "mbr bandwidth" + tag);
        CostLedger b;
        f.check(sxrc::harness_msr_repair(ss, msr, i, helpers, b) == ss.local_share(i), "msr share" + tag);
        f.check(b.snapshot().bits_transferred == 4 * (L + (i - 1)), "msr bandwidth" + tag);
        repairs += 2;
      }
    }
  }
  const auto secs = seconds_since(start);
  f.check(secs < 10.0, "runtime");
  std::ostringstream os;
  os << repairs << " repairs bit-identical, bandwidth 4(L+3(i-1)) / 4(L+(i-1)), " << secs << " s (< 10 s)";
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

std::vector<BitSeq> eliminate(const ShiftMatrix& exps, std::size_t L, const std::vector<BitSeq>& y,
                              CostLedger* ledger) {
  auto x = sxrc::select_subsequences(y, exps, L);
  std::vector<BitSeq*> ptrs;
  for (auto& s : x) ptrs.push_back(&s);
  sxrc::shift_xor_eliminate(exps, L, ptrs, ledger);
  return x;
}

// 4. Elimination, zigzag and the dense GF(2) solver agree.
Outcome solver_equivalence() {
  std::mt19937_64 rng(104);
  Failures f;
  for (int trial = 0; trial < 500; ++trial) {
    const auto k = 2 + rng() % 5;
    const auto L = 1 + rng() % 40;
    const auto exps = sxrc::random_rid(k, k, rng, 3);
    const auto x = random_message(k, L, rng);
    const auto y = sxrc::encode_system(x, exps);
    const auto tag = "trial " + std::to_string(trial);
    const auto e = eliminate(exps, L, y, nullptr);
    f.check(e == x, tag + " eliminate");
    f.check(sxrc::gf2_oracle_solve(y, exps, L) == e, tag + " oracle");
    f.check(sxrc::zigzag_solve(y, exps, L) == e, tag + " zigzag");
  }
  return {f.ok(), f.ok() ? "500 random RID systems (k 2..6, L 1..40): all three solvers equal the message"
                         : f.first()};
}

// XORs needed to form the selected subsequences from the unknowns.
std::uint64_t selection_encode_xors(const ShiftMatrix& exps, std::size_t L, const std::vector<BitSeq>& x,
                                    const std::vector<BitSeq>& expect) {
  const auto k = exps.rows();
  CostLedger ledger;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto r = k + 1 - i;
    BitSeq window(L);
    for (std::size_t j = 1; j <= k; ++j) {
      const auto delta = exps.diff(r, j, i);
      sxrc::xor_shifted(window, x[j - 1], delta, j == i ? nullptr : &ledger);
    }
    if (!(window == expect[i - 1])) throw std::logic_error("selection window disagrees");
  }
  return ledger.snapshot().xor_bit_ops;
}

// 5. Elimination XOR count identity and bound; zigzag comparison.
Outcome xor_identities() {
  std::mt19937_64 rng(105);
  Failures f;
  std::ostringstream zz;
  for (std::size_t k = 2; k <= 6; ++k) {
    for (auto L : kLengths) {
      const auto exps = sxrc::vandermonde(k, k);
      const auto x = random_message(k, L, rng);
      const auto y = sxrc::encode_system(x, exps);
      const auto sel = sxrc::select_subsequences(y, exps, L);
      CostLedger el;
      f.check(eliminate(exps, L, y, &el) == x, "solve");
      const auto count = el.snapshot().xor_bit_ops;
      const auto tag = " k=" + std::to_string(k) + " L=" + std::to_string(L);
      f.check(count == selection_encode_xors(exps, L, x, sel), "identity" + tag);
      f.check(static_cast<double>(count) < sxrc::bounds::elimination_xor_bound(k, L), "bound" + tag);
      if (L == 1024) {
        CostLedger zl;
        (void)sxrc::zigzag_solve(y, exps, L, &zl);
        zz << " k=" << k << ":" << count << "/" << zl.snapshot().xor_bit_ops << "/"
           << sxrc::bounds::zigzag_xor_reference(k, L);
      }
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = 2 + rng() % 5;
    const auto L = 1 + rng() % 100;
    const auto exps = sxrc::random_rid(k, k, rng, 4);
    const auto x = random_message(k, L, rng);
    const auto y = sxrc::encode_system(x, exps);
    CostLedger el;
    (void)eliminate(exps, L, y, &el);
    f.check(el.snapshot().xor_bit_ops == selection_encode_xors(exps, L, x, sxrc::select_subsequences(y, exps, L)),
            "identity random trial " + std::to_string(trial));
  }
  const auto detail = "count == selection encode XORs (Vandermonde and 200 random RID), < k(k-1)L; "
                      "L=1024 eliminate/zigzag/k(k+1)L:" + zz.str();
  return {f.ok(), f.ok() ? detail : f.first()};
}

std::vector<BitSeq> local_mbr_decode(const std::vector<NodeShare>& shares, const DescendingNodes& nodes,
                                     const MbrCode& code, CostLedger& ledger) {
  sxrc::MbrRetrieved mhat(code.k(), code.d());
  for (std::size_t v = 1; v <= code.k(); ++v) {
    const auto& share = shares[nodes.node(v) - 1];
    auto part = sxrc::mbr_extract_for_decode(share, v, code);
    for (std::size_t u = v; u <= code.d(); ++u) mhat.at(v, u) = std::move(part[u - v]);
  }
  return sxrc::mbr_decode(std::move(mhat), nodes, code, &ledger);
}

// 6. MBR decode XOR count against the closed form.
Outcome mbr_decode_bound() {
  std::mt19937_64 rng(106);
  Failures f;
  std::size_t checked = 0;
  double worst = 0;
  for (auto L : kLengths) {
    const auto code = MbrCode::vandermonde(6, 3, 4, L);
    const auto store = mbr_store(code, random_message(code.message_count(), L, rng));
    for (const auto& nodes : subsets(6, 3)) {
      CostLedger ledger;
      (void)sxrc::harness_mbr_decode(store, code, nodes, ledger);
      const auto xors = static_cast<double>(ledger.snapshot().xor_bit_ops);
      const auto bound = sxrc::bounds::mbr_decode_xor_bound(3, 4, L);
      f.check(xors < bound, "[6,3,4] L=" + std::to_string(L) + " nodes=" + join(nodes));
      worst = std::max(worst, xors / bound);
      ++checked;
    }
  }
  std::size_t single = 0;
  bool single_equal = true;
  std::size_t single_tight = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto d = 1 + rng() % 6;
    const auto k = 1 + rng() % d;
    const auto n = d + 1 + rng() % (8 - d);
    const auto L = 1 + rng() % 200;
    const MbrCode code(n, k, d, L, sxrc::random_rid(n, d, rng, 3));
    const auto msg = random_message(code.message_count(), L, rng);
    const auto packed = sxrc::MbrMessage::pack(msg, code);
    std::vector<NodeShare> shares;
    for (std::size_t i = 1; i <= n; ++i) shares.push_back(sxrc::mbr_encode(packed, code, i));
    const auto all = subsets(n, k);
    const DescendingNodes nodes(all[rng() % all.size()]);
    CostLedger ledger;
    const auto out = local_mbr_decode(shares, nodes, code, ledger);
    const auto xors = static_cast<double>(ledger.snapshot().xor_bit_ops);
    const auto bound = sxrc::bounds::mbr_decode_xor_bound(k, d, L);
    const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " d=" + std::to_string(d) +
                     " L=" + std::to_string(L);
    f.check(out == msg, "decode " + tag);
    if (k == 1) {
      // A single node carries no system to eliminate; the closed form is met with equality.
      ++single;
      single_equal = single_equal && xors <= bound;
      if (xors == bound) ++single_tight;
      continue;
    }
    f.check(xors < bound, tag);
    worst = std::max(worst, xors / bound);
    ++checked;
  }
  std::ostringstream os;
  os << checked << " decodes (k >= 2) strictly below the bound, max ratio " << worst << "; " << single
     << " k=1 decodes " << (single_equal ? "within" : "NOT within") << " it, " << single_tight << " with equality";
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

struct MsrSample {
  double c10 = 0;
  double c14 = 0;
};

// 7. MSR decode/repair XOR counts: fitted overhead constant and L-slope.
Outcome msr_bounds() {
  std::mt19937_64 rng(107);
  Failures f;
  const std::size_t L10 = 1 << 10;
  const std::size_t L14 = 1 << 14;
  const std::pair<std::size_t, std::size_t> configs[] = {{6, 3}, {7, 3}, {8, 4}};

  struct Series {
    double slope;
    double poly;
    std::vector<MsrSample> samples;
  };
  std::vector<Series> decode;
  std::vector<Series> repair;
  for (const auto& [n, k] : configs) {
    Series dec{sxrc::bounds::msr_decode_xor_slope(k), 0, {}};
    Series rep{sxrc::bounds::msr_repair_xor_slope(2 * k - 2), 0, {}};
    const auto d = static_cast<double>(2 * k - 2);
    dec.poly = static_cast<double>(n) * std::pow(static_cast<double>(k), 3) * d;
    rep.poly = static_cast<double>(n) * d * d * d;
    const auto code10 = MsrCode::vandermonde(n, k, L10);
    const auto code14 = MsrCode::vandermonde(n, k, L14);
    const auto s10 = msr_store(code10, random_message(code10.message_count(), L10, rng));
    const auto s14 = msr_store(code14, random_message(code14.message_count(), L14, rng));
    for (const auto& nodes : subsets(n, k)) {
      CostLedger a;
      CostLedger b;
      (void)sxrc::harness_msr_decode(s10, code10, nodes, a);
      (void)sxrc::harness_msr_decode(s14, code14, nodes, b);
      dec.samples.push_back({static_cast<double>(a.snapshot().xor_bit_ops),
                             static_cast<double>(b.snapshot().xor_bit_ops)});
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (const auto& helpers : sxrc::testing::subsets_without(n, 2 * k - 2, i)) {
        CostLedger a;
        CostLedger b;
        (void)sxrc::harness_msr_repair(s10, code10, i, helpers, a);
        (void)sxrc::harness_msr_repair(s14, code14, i, helpers, b);
        rep.samples.push_back({static_cast<double>(a.snapshot().xor_bit_ops),
                               static_cast<double>(b.snapshot().xor_bit_ops)});
      }
    }
    decode.push_back(std::move(dec));
    repair.push_back(std::move(rep));
  }

  // C fitted once at L = 2^10 over every decode and repair instance.
  double c = 0;
  for (const auto* group : {&decode, &repair}) {
    for (const auto& s : *group) {
      for (const auto& m : s.samples) c = std::max(c, (m.c10 - s.slope * L10) / s.poly);
    }
  }
  std::ostringstream os;
  os << "C=" << c;
  const auto check_group = [&](const std::vector<Series>& group, const char* what) {
    for (std::size_t g = 0; g < group.size(); ++g) {
      const auto& s = group[g];
      double max_slope = 0;
      for (const auto& m : s.samples) {
        f.check(m.c10 <= s.slope * L10 + c * s.poly, std::string(what) + " bound at 2^10");
        f.check(m.c14 <= s.slope * L14 + c * s.poly, std::string(what) + " bound at 2^14");
        max_slope = std::max(max_slope, (m.c14 - m.c10) / static_cast<double>(L14 - L10));
      }
      const auto rel = std::abs(max_slope - s.slope) / s.slope;
      f.check(rel <= 0.01, std::string(what) + " slope off by " + std::to_string(rel));
      os << "; " << what << " [" << configs[g].first << "," << configs[g].second << "] slope " << max_slope
         << " vs " << s.slope;
    }
  };
  check_group(decode, "decode");
  check_group(repair, "repair");
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

// 8. In-place claims under the global allocation hook.
Outcome in_place() {
  std::mt19937_64 rng(108);
  Failures f;
  std::ostringstream os;
  std::size_t largest_mbr = 0;
  std::size_t largest_rep = 0;
  double max_ratio = 0;
  for (std::size_t L : {std::size_t{4096}, std::size_t{1} << 14}) {
    const auto threshold = L / 8;
    const auto mbr = MbrCode::vandermonde(6, 3, 4, L);
    const auto ms = mbr_store(mbr, random_message(mbr.message_count(), L, rng));
    for (const auto& ids : subsets(6, 3)) {
      const DescendingNodes nodes(ids);
      sxrc::MbrRetrieved mhat(3, 4);
      for (std::size_t v = 1; v <= 3; ++v) {
        auto part = sxrc::mbr_extract_for_decode(ms.local_share(nodes.node(v)), v, mbr);
        for (std::size_t u = v; u <= 4; ++u) mhat.at(v, u) = std::move(part[u - v]);
      }
      sxrc::SeqAllocProbe probe;
      {
        AllocWindow w(threshold);
        sxrc::mbr_decode_in_place(mhat, nodes, mbr, nullptr);
        f.check(g_big_count == 0, "mbr decode allocated a sequence-length buffer");
        largest_mbr = std::max(largest_mbr, g_largest.load());
      }
      f.check(probe.allocated_bytes() == 0, "mbr decode allocated sequence storage");
    }

    const auto msr = MsrCode::vandermonde(6, 3, L);
    const auto ss = msr_store(msr, random_message(msr.message_count(), L, rng));
    for (std::size_t i = 1; i <= 6; ++i) {
      for (const auto& ids : sxrc::testing::subsets_without(6, 4, i)) {
        const DescendingNodes helpers(ids);
        std::vector<BitSeq> rhat;
        for (std::size_t v = 1; v <= 4; ++v) {
          rhat.push_back(sxrc::mbr_repair_helper(ms.local_share(helpers.node(v)), i, v, mbr));
        }
        {
          sxrc::SeqAllocProbe probe;
          AllocWindow w(threshold);
          const auto share = sxrc::mbr_repair(std::move(rhat), helpers, i, mbr, nullptr);
          f.check(g_big_count == 0, "mbr repair allocated a sequence-length buffer");
          f.check(probe.allocated_bytes() == 0, "mbr repair allocated sequence storage");
          largest_rep = std::max(largest_rep, g_largest.load());
          f.check(share == ms.local_share(i), "mbr repair result");
        }

        std::vector<BitSeq> qhat;
        for (std::size_t v = 1; v <= 4; ++v) {
          qhat.push_back(sxrc::msr_repair_helper(ss.local_share(helpers.node(v)), i, v, msr));
        }
        {
          sxrc::SeqAllocProbe probe;
          AllocWindow w(threshold);
          const auto share = sxrc::msr_repair(std::move(qhat), helpers, i, msr, nullptr);
          // The only sequence-length requests are the output sequences themselves.
          const auto out_bytes = sxrc::seq_storage_bytes(share.seqs);
          f.check(g_big_count == share.seqs.size() && g_big_bytes == out_bytes,
                  "msr repair allocated beyond its output");
          f.check(probe.allocated_bytes() == out_bytes, "msr repair sequence storage beyond output");
          f.check(share == ss.local_share(i), "msr repair result");
        }
      }
    }

    for (const auto& ids : subsets(6, 3)) {
      CostLedger ledger;
      const auto out = sxrc::harness_msr_decode(ss, msr, ids, ledger);
      const auto bits = 8.0 * static_cast<double>(ledger.snapshot().aux_seq_bytes_peak);
      const auto bound = sxrc::bounds::msr_decode_aux_bound_bits(msr);
      f.check(bits <= bound, "msr decode aux L=" + std::to_string(L));
      max_ratio = std::max(max_ratio, bits / bound);
    }
  }
  os << "MBR decode and both repairs: no auxiliary allocation >= L/8 bytes (largest request " << largest_mbr
     << " / " << largest_rep << " B); MSR repair allocates its output only; MSR decode peak aux <= "
     << "2a^2(L+32nd) bits, max ratio " << max_ratio;
  return {f.ok(), f.ok() ? os.str() : f.first() + "; " + os.str()};
}

// 9. Partial sums of the phase lengths lie strictly between the two column differences.
Outcome phase_sum_property() {
  std::mt19937_64 rng(109);
  Failures f;
  std::size_t pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto k = 3 + rng() % 6;
    const auto t = sxrc::random_rid(k, k, rng, 4);
    const auto plan = sxrc::phase_plan(t, 1);
    for (std::size_t u = 1; u < k; ++u) {
      for (std::size_t v = u + 1; v < k; ++v) {
        std::ptrdiff_t sum = 0;
        for (std::size_t b = u; b <= v; ++b) sum += static_cast<std::ptrdiff_t>(plan.phase_len[b - 1]);
        const auto lo = t.diff(k - v, v + 1, u);
        const auto hi = t.diff(k - u, v + 1, u);
        f.check(lo < sum && sum < hi, "trial " + std::to_string(trial));
        ++pairs;
      }
    }
  }
  return {f.ok(), f.ok() ? "1000 random RID matrices (k 3..8), " + std::to_string(pairs) + " pairs (u,v)" : f.first()};
}

class Recorder : public sxrc::EliminationTrace {
 public:
  void on_solve(std::size_t s, std::size_t i, std::size_t l) override { events.emplace_back(s, i, l); }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> events;
};

// 10. Phase plan and solve order of the three-unknown example.
Outcome phase_golden() {
  const ShiftMatrix t{{0, 1, 2}, {0, 2, 4}, {0, 3, 6}};
  Failures f;
  const auto plan = sxrc::phase_plan(t, 6);
  f.check(plan.phase_len[0] == 2 && plan.phase_len[1] == 1, "phase lengths");
  Recorder rec;
  std::vector<BitSeq> xhat(3, BitSeq(6));
  std::vector<BitSeq*> ptrs{&xhat[0], &xhat[1], &xhat[2]};
  sxrc::shift_xor_eliminate(t, 6, ptrs, nullptr, {sxrc::BackSubstitution::kBitSerial, &rec});
  std::vector<std::pair<std::size_t, std::size_t>> at4;
  for (const auto& [s, i, l] : rec.events) {
    if (s == 4) at4.emplace_back(i, l);
  }
  f.check(at4 == std::vector<std::pair<std::size_t, std::size_t>>{{1, 4}, {2, 2}, {3, 1}}, "iteration 4 order");
  std::ostringstream os;
  os << "(L1,L2)=(" << plan.phase_len[0] << "," << plan.phase_len[1] << "), iteration 4 solves";
  for (const auto& [i, l] : at4) os << " x" << i << "[" << l << "]";
  return {f.ok(), os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"MBR round-trip decode", mbr_round_trip},
      {"MSR round-trip decode", msr_round_trip},
      {"exact repair", exact_repair},
      {"solver oracle equivalence", solver_equivalence},
      {"elimination XOR identities", xor_identities},
      {"MBR decode XOR bound", mbr_decode_bound},
      {"MSR decode/repair XOR bounds", msr_bounds},
      {"in-place auxiliary space", in_place},
      {"phase-sum inequalities", phase_sum_property},
      {"phase plan golden", phase_golden},
  };
  bool all = true;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
