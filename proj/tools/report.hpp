#pragma once

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sxrc/cost_ledger.hpp"

namespace sxrc::cli {

using Json = nlohmann::ordered_json;

enum class Relation { kEqual, kLess, kLessEqual };

struct Check {
  std::string name;
  double measured = 0;
  double bound = 0;
  Relation relation = Relation::kLess;

  [[nodiscard]] bool pass() const noexcept;
};

/// One measured operation with the closed-form figures it is held against.
struct Report {
  std::string command;
  Json params = Json::object();
  CostSnapshot cost;
  std::vector<Check> checks;
  std::optional<double> wall_ms;

  [[nodiscard]] bool pass() const noexcept;
  [[nodiscard]] Json to_json() const;
  void print_text(std::ostream& out) const;
};

[[nodiscard]] const char* to_string(Relation r) noexcept;

}  // namespace sxrc::cli
