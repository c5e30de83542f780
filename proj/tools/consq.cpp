// consq: search, generate and verify sums of consecutive squares that are
// perfect squares.

#include "consq/app/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct Subcommand {
  consq::app::Command command;
  const char* description;
  std::vector<const char*> bounds;
};

const std::vector<Subcommand> kSubcommands = {
    {consq::app::Command::Check, "Test whether the M squares from a^2 sum to a square", {"a", "m"}},
    {consq::app::Command::Scan, "Find all solutions over a range of M", {"m-min", "m-max", "a-max"}},
    {consq::app::Command::Family, "Generate the pairs of one ratio eta/delta", {"eta", "delta", "f-max"}},
    {consq::app::Command::Pairs, "Detect pairs among the solutions for one M", {"m", "a-max"}},
    {consq::app::Command::VerifyTheorem, "Sweep (eta, delta, f) against the residue table",
     {"delta-max", "eta-max", "f-max"}},
    {consq::app::Command::VerifyNonexistence, "Brute-force the classes with no solutions", {"m-max", "a-max"}},
    {consq::app::Command::CrossCheck, "Check detected pairs against the residue table", {"m-max", "a-max"}},
    {consq::app::Command::DumpTable, "Print the residue table", {}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums of consecutive squares equal to squares"};
  app.require_subcommand(1);

  std::map<std::string, std::string> raw_bounds;
  std::string output;
  std::string format;
  bool prefilter = false;
  bool resume = false;
  bool force = false;
  std::size_t interrupt_after = 0;

  std::map<CLI::App*, consq::app::Command> commands;
  for (const auto& sub : kSubcommands) {
    auto* cmd = app.add_subcommand(std::string(consq::app::command_name(sub.command)), sub.description);
    commands[cmd] = sub.command;
    for (const char* bound : sub.bounds) {
      cmd->add_option("--" + std::string(bound), raw_bounds[bound], "integer bound")->required();
    }
    if (sub.command == consq::app::Command::Scan) {
      cmd->add_flag("--prefilter", prefilter, "skip M values outside the admissible classes");
    }
    cmd->add_option("-o,--output", output, "output file (default: $CONSQ_OUTPUT_DIR or stdout)");
    cmd->add_option("--format", format, "jsonl | csv | human")->check(CLI::IsMember({"jsonl", "csv", "human"}));
    cmd->add_flag("--resume", resume, "continue from the output's checkpoint");
    cmd->add_flag("--force", force, "overwrite an existing output");
    cmd->add_option("--interrupt-after", interrupt_after, "stop after N checkpointed units (testing)")
        ->group("");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : consq::app::exit_code::kUsage;
  }

  consq::app::RunConfig config;
  for (const auto& [cmd, command] : commands) {
    if (cmd->parsed()) config.command = command;
  }
  try {
    for (const auto& sub : kSubcommands) {
      if (sub.command != config.command) continue;
      for (const char* bound : sub.bounds) config.bounds[bound] = consq::parse_bigint(raw_bounds[bound]);
    }
  } catch (const consq::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return consq::app::exit_code::kUsage;
  }
  config.prefilter = prefilter;
  if (!output.empty()) config.output_path = output;
  if (!format.empty()) config.format = consq::app::parse_format(format);
  config.resume = resume;
  config.force = force;
  if (interrupt_after > 0) config.interrupt_after = interrupt_after;

  return consq::app::run(config, std::cout, std::cerr);
}
