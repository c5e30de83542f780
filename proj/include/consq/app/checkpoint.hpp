#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace consq::app {

/// Progress marker written next to the output after each outer unit.
struct Checkpoint {
  std::string fingerprint;
  std::string last_completed;  // decimal cursor: last M, delta or f-block end fully done
  std::uint64_t emitted = 0;   // records in the output at this point
  std::uintmax_t bytes = 0;    // output size at this point
  bool complete = false;
  nlohmann::json partial;      // partial report for sweep commands, else null
};

std::filesystem::path checkpoint_path_for(const std::filesystem::path& output);

/// Atomic replace via a temporary file. Throws std::runtime_error.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);

/// nullopt when the file does not exist; throws std::runtime_error when it
/// exists but cannot be parsed.
std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path);

}  // namespace consq::app
