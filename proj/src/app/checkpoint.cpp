#include "consq/app/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

namespace consq::app {

std::filesystem::path checkpoint_path_for(const std::filesystem::path& output) {
  auto path = output;
  path += ".ckpt";
  return path;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  nlohmann::ordered_json doc;
  doc["fingerprint"] = checkpoint.fingerprint;
  doc["last_completed"] = checkpoint.last_completed;
  doc["emitted"] = checkpoint.emitted;
  doc["bytes"] = checkpoint.bytes;
  doc["complete"] = checkpoint.complete;
  doc["partial"] = checkpoint.partial;

  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  try {
    const auto doc = nlohmann::json::parse(in);
    Checkpoint c;
    c.fingerprint = doc.at("fingerprint").get<std::string>();
    c.last_completed = doc.at("last_completed").get<std::string>();
    c.emitted = doc.at("emitted").get<std::uint64_t>();
    c.bytes = doc.at("bytes").get<std::uintmax_t>();
    c.complete = doc.at("complete").get<bool>();
    c.partial = doc.at("partial");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace consq::app
