#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sxrc/bounds.hpp"
#include "sxrc/errors.hpp"
#include "sxrc/harness.hpp"
#include "sxrc/mbr.hpp"
#include "sxrc/msr.hpp"
#include "sxrc/solver.hpp"

namespace sxrc::cli {
namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("cannot write " + path.string());
}

std::size_t default_d(const CliConfig& cfg) {
  if (cfg.d != 0) return cfg.d;
  if (cfg.code == "msr") return cfg.k >= 1 ? 2 * cfg.k - 2 : 0;
  return cfg.n >= 1 ? cfg.n - 1 : 0;
}

Json params_json(const CodeParams& p) {
  return {{"code", to_string(p.kind)}, {"n", p.n}, {"k", p.k}, {"d", p.d}, {"len_bits", p.length}};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void emit(const Report& report, const CliConfig& cfg, std::ostream& out) {
  if (cfg.report == "json") {
    out << report.to_json().dump(2) << '\n';
  } else {
    report.print_text(out);
  }
}

// Nodes the user named, or the first `count` live ones (skipping `skip`).
std::vector<std::size_t> pick_nodes(const std::vector<std::size_t>& given, const DistributedStore& store,
                                    std::size_t count, std::size_t skip) {
  if (!given.empty()) return given;
  std::vector<std::size_t> picked;
  for (auto i : store.alive_nodes()) {
    if (i != skip && picked.size() < count) picked.push_back(i);
  }
  return picked;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex row has an odd number of digits");
  const auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("invalid hex digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace

CodeParams make_params(const CliConfig& cfg, std::size_t length) {
  const auto kind = parse_code_kind(cfg.code);
  const auto d = default_d(cfg);
  if (cfg.matrix == "vandermonde") {
    if (kind == CodeKind::kMbr) return CodeParams::of(MbrCode::vandermonde(cfg.n, cfg.k, d, length));
    if (cfg.k < 2) throw ParameterError("msr needs k >= 2");
    const auto base = MsrCode::vandermonde(cfg.n, cfg.k, length);
    std::vector<Exponent> lambda(base.lambdas().begin(), base.lambdas().end());
    return CodeParams::of(MsrCode(cfg.n, cfg.k, d, length, base.phi(), std::move(lambda)));
  }
  std::ifstream in(cfg.matrix);
  if (!in) throw ParameterError("cannot open matrix file " + cfg.matrix);
  if (kind == CodeKind::kMbr) return CodeParams::of(MbrCode(cfg.n, cfg.k, d, length, parse_matrix(in, cfg.n, d)));
  if (cfg.k < 2) throw ParameterError("msr needs k >= 2");
  auto phi = parse_matrix(in, cfg.n, cfg.k - 1);
  const auto lambda_row = parse_matrix(in, 1, cfg.n);
  std::vector<Exponent> lambda(lambda_row.row_major().begin(), lambda_row.row_major().end());
  return CodeParams::of(MsrCode(cfg.n, cfg.k, d, length, std::move(phi), std::move(lambda)));
}

std::vector<BitSeq> split_message(std::span<const std::uint8_t> bytes, std::size_t count, std::size_t length) {
  if (8 * bytes.size() > count * length) throw ParameterError("input does not fit into B sequences of L bits");
  std::vector<BitSeq> seqs(count, BitSeq(length));
  for (std::size_t bit = 0; bit < 8 * bytes.size(); ++bit) {
    if ((bytes[bit / 8] >> (bit % 8)) & 1U) seqs[bit / length].set(bit % length + 1, true);
  }
  return seqs;
}

std::vector<std::uint8_t> join_message(std::span<const BitSeq> seqs, std::size_t byte_count) {
  std::vector<std::uint8_t> bytes(byte_count, 0);
  if (seqs.empty()) return bytes;
  const auto length = seqs.front().size();
  if (8 * byte_count > seqs.size() * length) throw VerificationError("decoded message shorter than the recorded size");
  for (std::size_t bit = 0; bit < 8 * byte_count; ++bit) {
    if (seqs[bit / length].get(bit % length + 1)) bytes[bit / 8] |= static_cast<std::uint8_t>(1U << (bit % 8));
  }
  return bytes;
}

std::vector<NodeShare> encode_all(const CodeParams& params, std::vector<BitSeq> msgs) {
  std::vector<NodeShare> shares;
  shares.reserve(params.n);
  if (params.kind == CodeKind::kMbr) {
    const auto code = params.mbr();
    const auto msg = MbrMessage::pack(std::move(msgs), code);
    for (std::size_t i = 1; i <= params.n; ++i) shares.push_back(mbr_encode(msg, code, i));
  } else {
    const auto code = params.msr();
    const auto msg = MsrMessage::pack(std::move(msgs), code);
    for (std::size_t i = 1; i <= params.n; ++i) shares.push_back(msr_encode(msg, code, i));
  }
  return shares;
}

Report measure_decode(const DistributedStore& store, std::span<const std::size_t> nodes, std::size_t jobs,
                      std::vector<BitSeq>* message) {
  const auto& params = store.params();
  Report r;
  r.command = "decode";
  r.params = params_json(params);
  r.params["nodes"] = std::vector<std::size_t>(nodes.begin(), nodes.end());
  CostLedger ledger;
  const auto start = std::chrono::steady_clock::now();
  std::vector<BitSeq> msg;
  if (params.kind == CodeKind::kMbr) {
    const auto code = params.mbr();
    msg = harness_mbr_decode(store, code, nodes, ledger, {jobs, BackSubstitution::kBitSerial});
    r.wall_ms = elapsed_ms(start);
    r.cost = ledger.snapshot();
    r.checks.push_back({"bandwidth", static_cast<double>(r.cost.bits_transferred),
                        static_cast<double>(bounds::mbr_decode_bandwidth(code)), Relation::kEqual});
    r.checks.push_back({"xor_bit_ops", static_cast<double>(r.cost.xor_bit_ops),
                        bounds::mbr_decode_xor_bound(code.k(), code.d(), code.length()),
                        code.k() >= 2 ? Relation::kLess : Relation::kLessEqual});
    r.checks.push_back({"aux_seq_bytes", static_cast<double>(r.cost.aux_seq_bytes_peak), 0, Relation::kEqual});
  } else {
    const auto code = params.msr();
    msg = harness_msr_decode(store, code, nodes, ledger, {jobs, BackSubstitution::kBitSerial});
    r.wall_ms = elapsed_ms(start);
    r.cost = ledger.snapshot();
    r.checks.push_back({"bandwidth", static_cast<double>(r.cost.bits_transferred),
                        static_cast<double>(bounds::msr_decode_bandwidth(code, nodes)), Relation::kEqual});
    r.checks.push_back({"xor_bit_ops", static_cast<double>(r.cost.xor_bit_ops), bounds::msr_decode_xor_bound(code),
                        Relation::kLessEqual});
    r.checks.push_back({"aux_seq_bits", 8.0 * static_cast<double>(r.cost.aux_seq_bytes_peak),
                        bounds::msr_decode_aux_bound_bits(code), Relation::kLessEqual});
  }
  if (message != nullptr) *message = std::move(msg);
  return r;
}

Report measure_repair(const DistributedStore& store, std::size_t failed, std::span<const std::size_t> helpers,
                      NodeShare* share) {
  const auto& params = store.params();
  Report r;
  r.command = "repair";
  r.params = params_json(params);
  r.params["failed"] = failed;
  r.params["helpers"] = std::vector<std::size_t>(helpers.begin(), helpers.end());
  if (std::find(helpers.begin(), helpers.end(), failed) != helpers.end()) {
    throw ParameterError("the failed node cannot be one of its helpers");
  }
  CostLedger ledger;
  const auto start = std::chrono::steady_clock::now();
  NodeShare repaired;
  if (params.kind == CodeKind::kMbr) {
    const auto code = params.mbr();
    repaired = harness_mbr_repair(store, code, failed, helpers, ledger);
    r.wall_ms = elapsed_ms(start);
    r.cost = ledger.snapshot();
    r.checks.push_back({"bandwidth", static_cast<double>(r.cost.bits_transferred),
                        static_cast<double>(bounds::mbr_repair_bandwidth(code, failed)), Relation::kEqual});
    r.checks.push_back({"xor_bit_ops", static_cast<double>(r.cost.xor_bit_ops),
                        bounds::mbr_repair_xor_bound(code, failed), Relation::kLessEqual});
  } else {
    const auto code = params.msr();
    repaired = harness_msr_repair(store, code, failed, helpers, ledger);
    r.wall_ms = elapsed_ms(start);
    r.cost = ledger.snapshot();
    r.checks.push_back({"bandwidth", static_cast<double>(r.cost.bits_transferred),
                        static_cast<double>(bounds::msr_repair_bandwidth(code, failed)), Relation::kEqual});
    r.checks.push_back({"xor_bit_ops", static_cast<double>(r.cost.xor_bit_ops), bounds::msr_repair_xor_bound(code),
                        Relation::kLessEqual});
  }
  r.checks.push_back({"aux_seq_bytes", static_cast<double>(r.cost.aux_seq_bytes_peak), 0, Relation::kEqual});
  if (share != nullptr) *share = std::move(repaired);
  return r;
}

int cmd_encode(const CliConfig& cfg, std::ostream& out) {
  const auto bytes = read_file(cfg.in);
  auto length = cfg.len_bits;
  if (length == 0) {
    const auto b = make_params(cfg, 1).message_count();
    length = std::max<std::size_t>(1, (8 * bytes.size() + b - 1) / b);
  }
  const auto params = make_params(cfg, length);
  auto shares = encode_all(params, split_message(bytes, params.message_count(), length));

  fs::create_directories(cfg.out);
  StoreManifest manifest{params, bytes.size(), {}};
  for (const auto& s : shares) manifest.digests[s.node] = write_share(s, params, cfg.out);
  manifest.write(cfg.out);
  out << "encoded " << bytes.size() << " bytes as " << params.message_count() << " sequences of " << length
      << " bits into " << params.n << " shares in " << cfg.out << '\n';
  return kOk;
}

int cmd_decode(const CliConfig& cfg, std::ostream& out) {
  const auto manifest = StoreManifest::read(cfg.in);
  const auto store = DistributedStore::load(cfg.in, manifest);
  const auto nodes = pick_nodes(cfg.nodes, store, manifest.params.k, 0);
  std::vector<BitSeq> msg;
  auto report = measure_decode(store, nodes, cfg.jobs, &msg);
  report.wall_ms.reset();
  write_file(cfg.out, join_message(msg, manifest.message_bytes));
  emit(report, cfg, out);
  return kOk;
}

int cmd_repair(const CliConfig& cfg, std::ostream& out) {
  const auto manifest = StoreManifest::read(cfg.in);
  auto store = DistributedStore::load(cfg.in, manifest);
  if (cfg.failed == 0 || cfg.failed > manifest.params.n) throw ParameterError("failed node out of range");
  const auto helpers = pick_nodes(cfg.helpers, store, manifest.params.d, cfg.failed);
  if (store.alive(cfg.failed)) store.fail_node(cfg.failed);
  NodeShare share;
  auto report = measure_repair(store, cfg.failed, helpers, &share);
  report.wall_ms.reset();
  store.heal_node(share);
  const fs::path dir = cfg.out.empty() ? fs::path(cfg.in) : fs::path(cfg.out);
  fs::create_directories(dir);
  write_share(share, manifest.params, dir);
  emit(report, cfg, out);
  return kOk;
}

int cmd_solve(const CliConfig& cfg, std::ostream& out) {
  std::stringstream text;
  if (cfg.in == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(cfg.in);
    if (!in) throw FormatError("cannot open " + cfg.in);
    text << in.rdbuf();
  }
  long long k = 0;
  long long length = 0;
  if (!(text >> k >> length) || k < 1 || length < 1) throw FormatError("system header must be 'k L' with k, L >= 1");
  const auto ku = static_cast<std::size_t>(k);
  const auto len = static_cast<std::size_t>(length);
  const auto exps = parse_matrix(text, ku, ku);
  if (!check_rid(exps)) throw ParameterError("exponent matrix is not RID");
  std::vector<BitSeq> y;
  for (std::size_t r = 1; r <= ku; ++r) {
    long long bits = -1;
    std::string hex;
    if (!(text >> bits >> hex)) throw FormatError("expected '<len_bits> <hex>' for every coded row");
    if (static_cast<std::size_t>(bits) != len + exps(r, ku)) {
      throw FormatError("coded row " + std::to_string(r) + " must hold L + t(r,k) bits");
    }
    const auto bytes = from_hex(hex);
    if (bytes.size() != (static_cast<std::size_t>(bits) + 7) / 8) throw FormatError("hex row length mismatch");
    y.push_back(BitSeq::from_bytes(bytes, static_cast<std::size_t>(bits)));
  }

  CostLedger ledger;
  std::vector<BitSeq> x;
  if (cfg.method == "zigzag") {
    x = zigzag_solve(y, exps, len, &ledger);
  } else if (cfg.method == "oracle") {
    x = gf2_oracle_solve(y, exps, len);
  } else {
    x = select_subsequences(y, exps, len);
    std::vector<BitSeq*> ptrs;
    for (auto& s : x) ptrs.push_back(&s);
    shift_xor_eliminate(exps, len, ptrs, &ledger);
  }

  std::ostringstream sol;
  for (const auto& s : x) {
    const auto hex = to_hex(s.to_bytes());
    sol << s.size() << ' ' << hex << '\n';
  }
  Report r;
  r.command = "solve";
  r.params = {{"method", cfg.method}, {"k", ku}, {"len_bits", len}};
  r.cost = ledger.snapshot();
  if (cfg.method == "eliminate" && ku >= 2) {
    r.checks.push_back({"xor_bit_ops", static_cast<double>(r.cost.xor_bit_ops), bounds::elimination_xor_bound(ku, len),
                        Relation::kLess});
  }
  if (cfg.out.empty() && cfg.report == "json") {
    auto j = r.to_json();
    j["solution"] = Json::array();
    for (const auto& s : x) j["solution"].push_back(to_hex(s.to_bytes()));
    out << j.dump(2) << '\n';
  } else if (cfg.out.empty()) {
    out << sol.str();
  } else {
    const auto s = sol.str();
    write_file(cfg.out, {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
    emit(r, cfg, out);
  }
  return kOk;
}

}  // namespace sxrc::cli
