#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace sxrc::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParameter = 2,
  kInsufficient = 3,
  kVerification = 4,
};

struct CliConfig {
  std::string code = "mbr";
  std::size_t n = 6;
  std::size_t k = 3;
  std::size_t d = 0;         // 0: n-1 for MBR, 2k-2 for MSR
  std::size_t len_bits = 0;  // 0: smallest L that holds the input
  std::string matrix = "vandermonde";
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> helpers;
  std::size_t failed = 0;
  std::string in;
  std::string out;
  std::size_t jobs = 1;
  std::string report = "text";
  std::string method = "eliminate";
  bool timing = true;
};

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sxrc::cli
