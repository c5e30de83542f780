#pragma once

#include "consq/arith.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace consq::app {

enum class Command { Check, Scan, Family, Pairs, VerifyTheorem, VerifyNonexistence, CrossCheck, DumpTable };
enum class Format { Jsonl, Csv, Human };

/// Bad flags, bounds below their minima, unusable paths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Check;
  std::map<std::string, BigInt> bounds;  // flag name without dashes -> value
  bool prefilter = false;
  std::optional<std::filesystem::path> output_path;
  bool resume = false;
  bool force = false;
  std::optional<Format> format;  // nullopt: the command's default
  // Test hook: stop after this many completed outer units, leaving a torn
  // record behind as an abrupt kill would.
  std::optional<std::size_t> interrupt_after;
};

std::string_view command_name(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
std::string_view format_name(Format format) noexcept;
std::optional<Format> parse_format(std::string_view name) noexcept;

Format effective_format(const RunConfig& config) noexcept;

/// Checks that every bound the command needs is present and at least its
/// minimum. Throws UsageError.
void validate(const RunConfig& config);

/// Stable 64-bit FNV-1a hash (hex) over the command, format, prefilter
/// flag and bounds. Paths and resume/force flags do not contribute.
std::string fingerprint(const RunConfig& config);

}  // namespace consq::app
