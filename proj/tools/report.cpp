#include "report.hpp"

#include <algorithm>
#include <iomanip>

namespace sxrc::cli {

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::kEqual: return "==";
    case Relation::kLess: return "<";
    case Relation::kLessEqual: return "<=";
  }
  return "?";
}

bool Check::pass() const noexcept {
  switch (relation) {
    case Relation::kEqual: return measured == bound;
    case Relation::kLess: return measured < bound;
    case Relation::kLessEqual: return measured <= bound;
  }
  return false;
}

bool Report::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["params"] = params;
  j["bandwidth_bits"] = cost.bits_transferred;
  j["xor_bit_ops"] = cost.xor_bit_ops;
  j["xor_word_ops"] = cost.xor_word_ops;
  j["aux_seq_bytes_peak"] = cost.aux_seq_bytes_peak;
  Json b = Json::object();
  for (const auto& c : checks) {
    b[c.name] = {{"measured", c.measured}, {"relation", to_string(c.relation)}, {"bound", c.bound}, {"pass", c.pass()}};
  }
  j["bounds"] = std::move(b);
  if (wall_ms) j["wall_ms"] = *wall_ms;
  j["pass"] = pass();
  return j;
}

void Report::print_text(std::ostream& out) const {
  out << command;
  for (const auto& [key, value] : params.items()) out << ' ' << key << '=' << value.dump();
  out << '\n'
      << "  bandwidth_bits      " << cost.bits_transferred << '\n'
      << "  xor_bit_ops         " << cost.xor_bit_ops << '\n'
      << "  xor_word_ops        " << cost.xor_word_ops << '\n'
      << "  aux_seq_bytes_peak  " << cost.aux_seq_bytes_peak << '\n';
  if (wall_ms) out << "  wall_ms             " << std::fixed << std::setprecision(3) << *wall_ms << '\n';
  out << std::defaultfloat << std::setprecision(15);
  for (const auto& c : checks) {
    out << "  " << (c.pass() ? "PASS " : "FAIL ") << c.name << ": " << c.measured << ' ' << to_string(c.relation)
        << ' ' << c.bound << '\n';
  }
}

}  // namespace sxrc::cli
