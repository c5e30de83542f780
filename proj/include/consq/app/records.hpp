#pragma once

#include "consq/app/config.hpp"
#include "consq/congruence.hpp"
#include "consq/families.hpp"
#include "consq/sums.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <span>
#include <string>

namespace consq::app {

/// Flat record with a fixed key order; values are decimal strings or bools.
using Record = nlohmann::ordered_json;

Record instance_record(const SumInstance& instance);
Record pair_record(const FamilyPair& pair);
Record pair_record(const DetectedPair& pair);
Record table_row_record(const TableRow& row);

/// (M, a) for instances, (eta, delta, f) for pairs, empty otherwise.
std::string dedupe_key(const Record& record);

/// One line, without the trailing newline.
std::string format_record(const Record& record, Format format);
std::string csv_header(const Record& record);

/// Parses a line produced by format_record back into a record (values
/// come back as strings, except JSON booleans). Throws UsageError.
Record parse_record(const std::string& line, Format format, const std::string& csv_header_line);

enum class WriteMode {
  Fresh,   // refuse an existing file
  Force,   // truncate an existing file
  Append,  // keep the file, skip records whose key is already present
};

/// Single-writer record file. Records with a key that was already written
/// (in this session or, in Append mode, earlier) are dropped.
class RecordSink {
 public:
  RecordSink(const std::filesystem::path& path, Format format, WriteMode mode);
  /// Writes to a caller-owned stream; position() is unavailable.
  RecordSink(std::ostream& out, Format format);

  /// Returns false for a dropped duplicate.
  bool write(const Record& record);
  void flush();
  /// Size of the output file after flushing.
  std::uintmax_t position();
  std::size_t written() const noexcept { return written_; }

 private:
  std::filesystem::path path_;
  Format format_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
  std::set<std::string> seen_;
  std::string header_;
  std::size_t written_ = 0;
};

/// Writes a batch of records; returns how many were written.
std::size_t persist(std::span<const Record> records, const std::filesystem::path& path, Format format,
                    WriteMode mode);

}  // namespace consq::app
