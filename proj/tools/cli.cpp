#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <ostream>

#include "commands.hpp"
#include "sxrc/errors.hpp"

namespace sxrc::cli {
namespace {

void add_code_options(CLI::App& app, CliConfig& cfg) {
  app.add_option("--code", cfg.code, "Code family")->check(CLI::IsMember({"mbr", "msr"}));
  app.add_option("--n", cfg.n, "Number of nodes");
  app.add_option("--k", cfg.k, "Nodes needed to decode");
  app.add_option("--d", cfg.d, "Helpers per repair (default n-1 for mbr, 2k-2 for msr)");
  app.add_option("--len-bits", cfg.len_bits, "Bits per message sequence (default: fit the input)");
  app.add_option("--matrix", cfg.matrix, "'vandermonde' or a file of exponent rows (msr: then a lambda line)");
}

void add_report_option(CLI::App& app, CliConfig& cfg) {
  app.add_option("--report", cfg.report, "Report format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Shift-XOR regenerating codes: encode, decode, repair, solve, bench"};
  app.require_subcommand(1);

  auto* encode = app.add_subcommand("encode", "Split a file into n node shares");
  add_code_options(*encode, cfg);
  encode->add_option("--in", cfg.in, "Input file")->required();
  encode->add_option("--out", cfg.out, "Output store directory")->required();

  auto* decode = app.add_subcommand("decode", "Reconstruct the file from k shares");
  decode->add_option("--in", cfg.in, "Store directory")->required();
  decode->add_option("--out", cfg.out, "Output file")->required();
  decode->add_option("--nodes", cfg.nodes, "Nodes to decode from (default: first k present)")->delimiter(',');
  decode->add_option("--jobs", cfg.jobs, "Worker threads for independent systems")->check(CLI::PositiveNumber);
  add_report_option(*decode, cfg);

  auto* repair = app.add_subcommand("repair", "Regenerate a failed node from d helpers");
  repair->add_option("--in", cfg.in, "Store directory")->required();
  repair->add_option("--failed", cfg.failed, "Node to repair")->required();
  repair->add_option("--helpers", cfg.helpers, "Helper nodes (default: first d present)")->delimiter(',');
  repair->add_option("--out", cfg.out, "Directory for the repaired share (default: the store)");
  add_report_option(*repair, cfg);

  auto* solve = app.add_subcommand("solve", "Solve a shift-XOR system given as text");
  solve->add_option("--in", cfg.in, "System file ('-' for stdin)")->required();
  solve->add_option("--out", cfg.out, "Solution file (default: stdout)");
  solve->add_option("--method", cfg.method, "Solver")->check(CLI::IsMember({"eliminate", "zigzag", "oracle"}));
  add_report_option(*solve, cfg);

  auto* bench = app.add_subcommand("bench", "Measure operation counts against the closed-form bounds");
  add_code_options(*bench, cfg);
  bench->add_option("--jobs", cfg.jobs, "Worker threads for independent systems")->check(CLI::PositiveNumber);
  bench->add_flag("!--no-timing", cfg.timing, "Omit wall-clock times (stable output)");
  add_report_option(*bench, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  }

  try {
    if (encode->parsed()) return cmd_encode(cfg, out);
    if (decode->parsed()) return cmd_decode(cfg, out);
    if (repair->parsed()) return cmd_repair(cfg, out);
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (bench->parsed()) return cmd_bench(cfg, bench->count("--code") > 0, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const UnavailableError& e) {
    err << "error: " << e.what() << '\n';
    return kInsufficient;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kVerification;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace sxrc::cli
