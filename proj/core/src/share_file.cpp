#include "sxrc/share_file.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sxrc/errors.hpp"

namespace sxrc {
namespace {

constexpr std::uint16_t kVersion = 1;
constexpr char kMagic[4] = {'S', 'X', 'O', 'R'};

class Writer {
 public:
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  template <class T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::size_t v) {
    if (v > std::numeric_limits<std::uint32_t>::max()) throw ParameterError("value does not fit in u32");
    le(static_cast<std::uint32_t>(v));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::span<const std::uint8_t> bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw FormatError("share file truncated");
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <class T>
  T le() {
    auto b = bytes(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(b[i]) << (8 * i));
    return v;
  }
  std::size_t u32() { return le<std::uint32_t>(); }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::size_t exponent_cols(CodeKind kind, std::size_t k, std::size_t d) {
  return kind == CodeKind::kMbr ? d : k - 1;
}

std::string join(std::span<const Exponent> v, std::size_t stride) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += (stride != 0 && i % stride == 0) ? ';' : ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<Exponent> split_numbers(std::string_view text) {
  std::vector<Exponent> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == ';') {
      ++i;
      continue;
    }
    Exponent v = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) throw FormatError("manifest: bad number list");
    out.push_back(v);
    i = static_cast<std::size_t>(p - text.data());
  }
  return out;
}

std::size_t parse_size(std::string_view text) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) throw FormatError("manifest: bad integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string to_string(CodeKind kind) { return kind == CodeKind::kMbr ? "mbr" : "msr"; }

CodeKind parse_code_kind(std::string_view text) {
  if (text == "mbr") return CodeKind::kMbr;
  if (text == "msr") return CodeKind::kMsr;
  throw ParameterError("code kind must be mbr or msr");
}

CodeParams CodeParams::of(const MbrCode& code) {
  return {CodeKind::kMbr, code.n(), code.k(), code.d(), code.length(), code.psi(), {}};
}

CodeParams CodeParams::of(const MsrCode& code) {
  return {CodeKind::kMsr, code.n(), code.k(),
          code.d(),       code.length(), code.phi(),
          {code.lambdas().begin(), code.lambdas().end()}};
}

MbrCode CodeParams::mbr() const {
  if (kind != CodeKind::kMbr) throw ParameterError("parameters describe an MSR code");
  return MbrCode(n, k, d, length, exponents);
}

MsrCode CodeParams::msr() const {
  if (kind != CodeKind::kMsr) throw ParameterError("parameters describe an MBR code");
  return MsrCode(n, k, d, length, exponents, lambda);
}

std::size_t CodeParams::message_count() const noexcept {
  return kind == CodeKind::kMbr ? k * (k + 1) / 2 + k * (d - k) : k * (k - 1);
}

std::size_t CodeParams::share_seq_length(std::size_t node) const {
  if (node == 0 || node > n) throw ParameterError("node index out of range");
  const auto a = alpha();
  auto len = length + exponents(node, a);
  if (kind == CodeKind::kMsr) len += lambda[node - 1];
  return len;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint8_t> serialize_share(const NodeShare& share, const CodeParams& params) {
  Writer w;
  w.bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.le(kVersion);
  w.le(static_cast<std::uint8_t>(params.kind));
  w.u32(params.n);
  w.u32(params.k);
  w.u32(params.d);
  w.u32(params.length);
  for (auto t : params.exponents.row_major()) w.le(t);
  if (params.kind == CodeKind::kMsr) {
    for (auto l : params.lambda) w.le(l);
  }
  w.u32(share.node);
  for (const auto& s : share.seqs) {
    w.le(static_cast<std::uint64_t>(s.size()));
    w.bytes(s.to_bytes());
  }
  return w.take();
}

ShareFile parse_share(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw FormatError("not an SXOR share file");
  if (r.le<std::uint16_t>() != kVersion) throw FormatError("unsupported SXOR version");
  const auto kind_byte = r.le<std::uint8_t>();
  if (kind_byte != 1 && kind_byte != 2) throw FormatError("unknown code kind");
  ShareFile f;
  auto& p = f.params;
  p.kind = static_cast<CodeKind>(kind_byte);
  p.n = r.u32();
  p.k = r.u32();
  p.d = r.u32();
  p.length = r.u32();
  if (p.n == 0 || p.k == 0 || p.d == 0 || p.n > 4096 || p.d > 4096) throw FormatError("implausible parameters");
  if (p.kind == CodeKind::kMsr && p.k < 2) throw FormatError("implausible parameters");
  const auto cols = exponent_cols(p.kind, p.k, p.d);
  std::vector<Exponent> t(p.n * cols);
  for (auto& x : t) x = r.le<std::uint32_t>();
  p.exponents = ShiftMatrix(p.n, cols, std::move(t));
  if (p.kind == CodeKind::kMsr) {
    p.lambda.resize(p.n);
    for (auto& l : p.lambda) l = r.le<std::uint32_t>();
  }
  f.share.node = r.u32();
  if (f.share.node == 0 || f.share.node > p.n) throw FormatError("node index out of range");
  for (std::size_t j = 0; j < p.alpha(); ++j) {
    const auto len = r.le<std::uint64_t>();
    if (len > (std::uint64_t{1} << 40)) throw FormatError("implausible sequence length");
    const auto nbytes = static_cast<std::size_t>((len + 7) / 8);
    f.share.seqs.push_back(BitSeq::from_bytes(r.bytes(nbytes), static_cast<std::size_t>(len)));
  }
  if (!r.done()) throw FormatError("trailing bytes after share data");
  return f;
}

std::filesystem::path share_path(const std::filesystem::path& dir, std::size_t node) {
  return dir / ("node_" + std::to_string(node) + ".sxr");
}

std::uint64_t write_share(const NodeShare& share, const CodeParams& params, const std::filesystem::path& dir) {
  const auto bytes = serialize_share(share, params);
  const auto path = share_path(dir, share.node);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("cannot write " + path.string());
  return fnv1a64(bytes);
}

namespace {
std::vector<std::uint8_t> slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw FormatError("cannot read " + file.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}
}  // namespace

ShareFile read_share(const std::filesystem::path& file) { return parse_share(slurp(file)); }

std::uint64_t file_digest(const std::filesystem::path& file) { return fnv1a64(slurp(file)); }

std::string StoreManifest::to_text() const {
  std::ostringstream os;
  os << "format=sxrc-manifest-1\n";
  os << "code=" << to_string(params.kind) << '\n';
  os << "n=" << params.n << "\nk=" << params.k << "\nd=" << params.d << '\n';
  os << "len_bits=" << params.length << '\n';
  os << "matrix=" << join(params.exponents.row_major(), params.exponents.cols()) << '\n';
  if (params.kind == CodeKind::kMsr) os << "lambda=" << join(params.lambda, 0) << '\n';
  os << "message_bytes=" << message_bytes << '\n';
  for (const auto& [node, dg] : digests) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(dg));
    os << "digest." << node << '=' << hex << '\n';
  }
  return os.str();
}

StoreManifest StoreManifest::from_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("manifest: expected key=value");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  const auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError("manifest: missing " + key);
    return it->second;
  };
  if (need("format") != "sxrc-manifest-1") throw FormatError("manifest: unknown format");
  StoreManifest m;
  auto& p = m.params;
  p.kind = parse_code_kind(need("code"));
  p.n = parse_size(need("n"));
  p.k = parse_size(need("k"));
  p.d = parse_size(need("d"));
  p.length = parse_size(need("len_bits"));
  if (p.n == 0 || p.k == 0 || p.d == 0) throw FormatError("manifest: zero parameter");
  if (p.kind == CodeKind::kMsr && p.k < 2) throw FormatError("manifest: MSR needs k >= 2");
  const auto cols = exponent_cols(p.kind, p.k, p.d);
  auto t = split_numbers(need("matrix"));
  if (t.size() != p.n * cols) throw FormatError("manifest: matrix has the wrong size");
  p.exponents = ShiftMatrix(p.n, cols, std::move(t));
  if (p.kind == CodeKind::kMsr) {
    p.lambda = split_numbers(need("lambda"));
    if (p.lambda.size() != p.n) throw FormatError("manifest: lambda has the wrong size");
  }
  m.message_bytes = parse_size(need("message_bytes"));
  for (const auto& [key, value] : kv) {
    if (key.rfind("digest.", 0) != 0) continue;
    const auto node = parse_size(std::string_view(key).substr(7));
    std::uint64_t dg = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dg, 16);
    if (ec != std::errc() || ptr != value.data() + value.size()) throw FormatError("manifest: bad digest");
    m.digests[node] = dg;
  }
  return m;
}

void StoreManifest::write(const std::filesystem::path& dir) const {
  std::ofstream out(dir / kFileName, std::ios::trunc);
  out << to_text();
  if (!out) throw FormatError("cannot write manifest in " + dir.string());
}

StoreManifest StoreManifest::read(const std::filesystem::path& dir) {
  std::ifstream in(dir / kFileName);
  if (!in) throw FormatError("cannot read manifest in " + dir.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

}  // namespace sxrc
