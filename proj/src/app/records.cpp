#include "consq/app/records.hpp"

#include <sstream>

namespace consq::app {

Record instance_record(const SumInstance& instance) {
  Record r;
  r["m"] = instance.m().str();
  r["a"] = instance.a().str();
  r["total"] = instance.total().str();
  r["s"] = instance.root().str();
  return r;
}

namespace {

Record pair_fields(const RatioMu& mu, const BigInt& f, const BigInt& m, const BigInt& a1, const BigInt& a2,
                   const BigInt& s1, const BigInt& s2, bool eq3) {
  Record r;
  r["eta"] = mu.eta().str();
  r["delta"] = mu.delta().str();
  r["f"] = f.str();
  r["m"] = m.str();
  r["a1"] = a1.str();
  r["a2"] = a2.str();
  r["s1"] = s1.str();
  r["s2"] = s2.str();
  r["eq3"] = eq3;
  return r;
}

std::string residues_field(const ResidueClass& c) {
  std::string out;
  for (std::size_t i = 0; i < c.residues().size(); ++i) out += (i ? "|" : "") + std::to_string(c.residues()[i]);
  return out;
}

std::string value_text(const nlohmann::ordered_json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

nlohmann::ordered_json text_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  return text;
}

}  // namespace

Record pair_record(const FamilyPair& p) { return pair_fields(p.mu, p.f, p.m, p.a1, p.a2, p.s1, p.s2, true); }

Record pair_record(const DetectedPair& p) {
  return pair_fields(p.mu, p.f, p.first.m(), p.first.a(), p.second.a(), p.first.root(), p.second.root(),
                     p.eq3_holds);
}

Record table_row_record(const TableRow& row) {
  Record r;
  r["row"] = row.id;
  r["delta_mod"] = std::to_string(row.delta_class.modulus());
  r["delta_res"] = residues_field(row.delta_class);
  r["eta_mod"] = std::to_string(row.eta_class.modulus());
  r["eta_res"] = residues_field(row.eta_class);
  r["f_mod"] = std::to_string(row.f_class.modulus());
  r["f_res"] = residues_field(row.f_class);
  r["m_mod"] = std::to_string(row.m_class.modulus());
  r["m_res"] = residues_field(row.m_class);
  return r;
}

std::string dedupe_key(const Record& record) {
  auto field = [&](const char* key) { return record.contains(key) ? value_text(record.at(key)) : std::string(); };
  if (record.contains("eta")) return "pair:" + field("eta") + "/" + field("delta") + "/" + field("f");
  if (record.contains("a")) return "instance:" + field("m") + "/" + field("a");
  return {};
}

std::string format_record(const Record& record, Format format) {
  if (format == Format::Jsonl) return record.dump();
  std::string line;
  bool first = true;
  for (const auto& [key, value] : record.items()) {
    if (!first) line += format == Format::Csv ? "," : " ";
    first = false;
    if (format == Format::Human) line += key + "=";
    line += value_text(value);
  }
  return line;
}

std::string csv_header(const Record& record) {
  std::string line;
  for (const auto& [key, value] : record.items()) line += (line.empty() ? "" : ",") + key;
  return line;
}

Record parse_record(const std::string& line, Format format, const std::string& csv_header_line) {
  if (format == Format::Jsonl) {
    try {
      return Record::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("unreadable record: ") + e.what());
    }
  }
  auto split = [](const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
  };
  Record r = Record::object();
  if (format == Format::Csv) {
    const auto keys = split(csv_header_line, ',');
    const auto values = split(line, ',');
    if (keys.size() != values.size()) throw UsageError("csv record does not match header: " + line);
    for (std::size_t i = 0; i < keys.size(); ++i) r[keys[i]] = text_value(values[i]);
    return r;
  }
  for (const auto& token : split(line, ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("unreadable record: " + line);
    r[token.substr(0, eq)] = text_value(token.substr(eq + 1));
  }
  return r;
}

RecordSink::RecordSink(const std::filesystem::path& path, Format format, WriteMode mode)
    : path_(path), format_(format) {
  namespace fs = std::filesystem;
  const bool exists = fs::exists(path_);
  if (exists && mode == WriteMode::Fresh) {
    throw UsageError("refusing to overwrite " + path_.string() + " (use --force or --resume)");
  }
  if (exists && mode == WriteMode::Append) {
    std::ifstream in(path_);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (first && format_ == Format::Csv) {
        header_ = line;
        first = false;
        continue;
      }
      first = false;
      const auto key = dedupe_key(parse_record(line, format_, header_));
      if (!key.empty()) seen_.insert(key);
    }
  }
  file_.open(path_, mode == WriteMode::Append ? std::ios::app : std::ios::trunc);
  out_ = &file_;
  if (!file_) throw UsageError("cannot open " + path_.string() + " for writing");
}

RecordSink::RecordSink(std::ostream& out, Format format) : path_("<stream>"), format_(format), out_(&out) {}

bool RecordSink::write(const Record& record) {
  const auto key = dedupe_key(record);
  if (!key.empty() && !seen_.insert(key).second) return false;
  if (format_ == Format::Csv && header_.empty()) {
    header_ = csv_header(record);
    *out_ << header_ << '\n';
  }
  *out_ << format_record(record, format_) << '\n';
  if (!*out_) throw UsageError("write to " + path_.string() + " failed");
  ++written_;
  return true;
}

void RecordSink::flush() {
  out_->flush();
  if (!*out_) throw UsageError("flush of " + path_.string() + " failed");
}

std::uintmax_t RecordSink::position() {
  if (out_ != &file_) throw UsageError("position of a stream sink is undefined");
  flush();
  return std::filesystem::file_size(path_);
}

std::size_t persist(std::span<const Record> records, const std::filesystem::path& path, Format format,
                    WriteMode mode) {
  RecordSink sink(path, format, mode);
  for (const auto& record : records) sink.write(record);
  sink.flush();
  return sink.written();
}

}  // namespace consq::app
