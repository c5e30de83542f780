#include "consq/app/run.hpp"

#include "consq/app/checkpoint.hpp"
#include "consq/app/records.hpp"
#include "consq/congruence.hpp"
#include "consq/families.hpp"
#include "consq/sums.hpp"
#include "consq/verify.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace consq::app {

namespace fs = std::filesystem;

namespace {

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::Check, "check"},
    {Command::Scan, "scan"},
    {Command::Family, "family"},
    {Command::Pairs, "pairs"},
    {Command::VerifyTheorem, "verify-theorem"},
    {Command::VerifyNonexistence, "verify-nonexistence"},
    {Command::CrossCheck, "cross-check"},
    {Command::DumpTable, "dump-table"},
};

struct BoundSpec {
  const char* name;
  int minimum;
};

std::vector<BoundSpec> required_bounds(Command command) {
  switch (command) {
    case Command::Check: return {{"a", 1}, {"m", 2}};
    case Command::Scan: return {{"m-min", 2}, {"m-max", 2}, {"a-max", 1}};
    case Command::Family: return {{"eta", 1}, {"delta", 1}, {"f-max", 2}};
    case Command::Pairs: return {{"m", 2}, {"a-max", 1}};
    case Command::VerifyTheorem: return {{"delta-max", 2}, {"eta-max", 2}, {"f-max", 2}};
    case Command::VerifyNonexistence: return {{"m-max", 3}, {"a-max", 1}};
    case Command::CrossCheck: return {{"m-max", 2}, {"a-max", 2}};
    case Command::DumpTable: return {};
  }
  return {};
}

// f values per checkpoint unit in `family`.
constexpr unsigned kFamilyBlock = 256;

}  // namespace

std::string_view command_name(Command command) noexcept {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (const auto& [c, n] : kCommandNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view format_name(Format format) noexcept {
  switch (format) {
    case Format::Jsonl: return "jsonl";
    case Format::Csv: return "csv";
    case Format::Human: return "human";
  }
  return "unknown";
}

std::optional<Format> parse_format(std::string_view name) noexcept {
  for (auto f : {Format::Jsonl, Format::Csv, Format::Human}) {
    if (format_name(f) == name) return f;
  }
  return std::nullopt;
}

Format effective_format(const RunConfig& config) noexcept {
  if (config.format) return *config.format;
  switch (config.command) {
    case Command::Check: return Format::Human;
    case Command::DumpTable: return Format::Csv;
    default: return Format::Jsonl;
  }
}

void validate(const RunConfig& config) {
  const auto specs = required_bounds(config.command);
  for (const auto& spec : specs) {
    auto it = config.bounds.find(spec.name);
    if (it == config.bounds.end()) {
      throw UsageError(std::string(command_name(config.command)) + ": missing --" + spec.name);
    }
    if (it->second < spec.minimum) {
      throw UsageError("--" + std::string(spec.name) + " must be >= " + std::to_string(spec.minimum));
    }
  }
  for (const auto& [name, value] : config.bounds) {
    bool known = false;
    for (const auto& spec : specs) known = known || name == spec.name;
    if (!known) throw UsageError(std::string(command_name(config.command)) + ": unexpected --" + name);
  }
  if (config.command == Command::Scan && config.bounds.at("m-min") > config.bounds.at("m-max")) {
    throw UsageError("--m-min must not exceed --m-max");
  }
  if (config.command == Command::Family &&
      gcd(config.bounds.at("eta"), config.bounds.at("delta")) != 1) {
    throw UsageError("--eta and --delta must be coprime");
  }
  if (config.resume && config.force) throw UsageError("--resume and --force are mutually exclusive");
}

std::string fingerprint(const RunConfig& config) {
  std::string canonical(command_name(config.command));
  canonical += '|';
  canonical += format_name(effective_format(config));
  canonical += config.prefilter ? "|prefilter" : "|all";
  for (const auto& [name, value] : config.bounds) canonical += "|" + name + "=" + value.str();

  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << hash;
  return hex.str();
}

namespace {

// Thrown from command bodies; mapped to an exit code by run().
struct ExitRequest {
  int code;
};

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err), format_(effective_format(config)) {
    output_ = config.output_path;
    if (!output_ && config.command != Command::Check) {
      if (const char* dir = std::getenv("CONSQ_OUTPUT_DIR"); dir && *dir) {
        const bool report = is_report_command();
        const char* ext = report ? ".json"
                          : format_ == Format::Jsonl ? ".jsonl"
                          : format_ == Format::Csv   ? ".csv"
                                                     : ".txt";
        output_ = fs::path(dir) / (std::string(command_name(config.command)) + ext);
      }
    }
    if (config.resume && !output_) throw UsageError("--resume needs an output file");
  }

  bool is_report_command() const {
    return config_.command == Command::VerifyTheorem || config_.command == Command::VerifyNonexistence ||
           config_.command == Command::CrossCheck;
  }

  const BigInt& bound(const char* name) const { return config_.bounds.at(name); }
  bool prefilter() const { return config_.prefilter; }
  Format format() const { return format_; }
  std::ostream& err() { return err_; }

  // Sets up the sink and checkpoint state. Returns the cursor to resume
  // after, or nullopt for a fresh start.
  std::optional<BigInt> open() {
    if (!output_) {
      sink_.emplace(out_, format_);
      return std::nullopt;
    }
    ckpt_path_ = checkpoint_path_for(*output_);
    WriteMode mode = WriteMode::Fresh;
    std::optional<BigInt> cursor;
    if (config_.resume) {
      std::optional<Checkpoint> previous;
      try {
        previous = load_checkpoint(ckpt_path_);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      if (previous) {
        if (previous->fingerprint != fingerprint(config_)) {
          throw UsageError("checkpoint " + ckpt_path_.string() + " belongs to a different run");
        }
        if (!previous->last_completed.empty()) cursor = parse_bigint(previous->last_completed);
        if (!is_report_command()) {
          if (!fs::exists(*output_) || fs::file_size(*output_) < previous->bytes) {
            throw UsageError("output " + output_->string() + " is shorter than its checkpoint");
          }
          fs::resize_file(*output_, previous->bytes);
        }
        state_ = *previous;
        resumed_emitted_ = previous->emitted;
        mode = WriteMode::Append;
      } else if (fs::exists(*output_)) {
        throw UsageError("no checkpoint to resume " + output_->string() + " from");
      }
    } else if (config_.force) {
      mode = WriteMode::Force;
      fs::remove(ckpt_path_);
    } else if (fs::exists(ckpt_path_)) {
      throw UsageError("refusing to overwrite " + ckpt_path_.string() + " (use --force or --resume)");
    }
    state_.fingerprint = fingerprint(config_);
    if (is_report_command()) {
      if (mode == WriteMode::Fresh && fs::exists(*output_)) {
        throw UsageError("refusing to overwrite " + output_->string() + " (use --force or --resume)");
      }
    } else {
      sink_.emplace(*output_, format_, mode);
    }
    return cursor;
  }

  bool complete_on_disk() const { return state_.complete; }
  nlohmann::json& partial() { return state_.partial; }
  RecordSink& sink() { return *sink_; }

  // Called after each fully processed outer unit.
  void unit_done(const BigInt& cursor) {
    ++units_;
    if (sink_) sink_->flush();
    if (!output_) return;
    state_.last_completed = cursor.str();
    if (sink_) {
      state_.emitted = resumed_emitted_ + sink_->written();
      state_.bytes = sink_->position();
    }
    save_checkpoint(ckpt_path_, state_);
    if (config_.interrupt_after && units_ >= *config_.interrupt_after) {
      if (sink_) {
        // A torn record, as left behind by a kill in the middle of a write.
        std::ofstream torn(*output_, std::ios::app);
        torn << (format_ == Format::Jsonl ? "{\"m\":\"" : "7");
      }
      err_ << "interrupted after " << units_ << " units\n";
      throw ExitRequest{exit_code::kInterrupted};
    }
  }

  void finish() {
    if (sink_) sink_->flush();
    if (!output_) return;
    state_.complete = true;
    if (sink_) {
      state_.emitted = resumed_emitted_ + sink_->written();
      state_.bytes = sink_->position();
    }
    save_checkpoint(ckpt_path_, state_);
  }

  void write_report(const VerifyReport& report) {
    const std::string doc = to_json(report).dump(2);
    if (!output_) {
      out_ << doc << '\n';
      return;
    }
    auto tmp = *output_;
    tmp += ".tmp";
    {
      std::ofstream file(tmp, std::ios::trunc);
      file << doc << '\n';
      if (!file) throw UsageError("cannot write " + tmp.string());
    }
    fs::rename(tmp, *output_);
  }

  std::uint64_t emitted_total() const { return resumed_emitted_ + (sink_ ? sink_->written() : 0); }

 private:
  const RunConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  Format format_;
  std::optional<fs::path> output_;
  fs::path ckpt_path_;
  std::optional<RecordSink> sink_;
  Checkpoint state_;
  std::uint64_t resumed_emitted_ = 0;
  std::size_t units_ = 0;
};

int run_check(Session& session, std::ostream& out) {
  const BigInt& a = session.bound("a");
  const BigInt& m = session.bound("m");
  const BigInt total = sum_closed_form(a, m);
  auto root = is_perfect_square(total);
  session.open();
  if (root) {
    session.sink().write(instance_record(SumInstance(a, m, total, *root)));
  } else if (session.format() == Format::Human) {
    out << "a=" << a << " m=" << m << " total=" << total << ": not a square\n";
  } else {
    Record r;
    r["m"] = m.str();
    r["a"] = a.str();
    r["total"] = total.str();
    r["s"] = nullptr;
    session.sink().write(r);
  }
  session.finish();
  return exit_code::kOk;
}

int run_scan(Session& session) {
  const BigInt& m_min = session.bound("m-min");
  const BigInt& m_max = session.bound("m-max");
  const BigInt& a_max = session.bound("a-max");
  auto cursor = session.open();
  if (session.complete_on_disk()) return exit_code::kOk;
  const bool prefilter = session.prefilter();
  auto& partial = session.partial();
  if (!partial.is_object()) partial = {{"skipped_m", 0}};

  for (BigInt m = cursor ? BigInt(*cursor + 1) : m_min; m <= m_max; ++m) {
    auto result = scan(m, m, a_max, prefilter);
    partial["skipped_m"] = partial["skipped_m"].get<std::uint64_t>() + result.skipped.size();
    for (const auto& instance : result.instances) session.sink().write(instance_record(instance));
    session.unit_done(m);
  }
  session.finish();
  session.err() << "scan: " << session.emitted_total() << " instances, " << partial["skipped_m"].get<std::uint64_t>()
                << " M values skipped by the prefilter\n";
  return exit_code::kOk;
}

int run_family(Session& session) {
  const BigInt& eta = session.bound("eta");
  const BigInt& delta = session.bound("delta");
  const BigInt& f_max = session.bound("f-max");
  auto cursor = session.open();
  if (session.complete_on_disk()) return exit_code::kOk;
  auto& partial = session.partial();
  if (!partial.is_object()) partial = {{"ordinal", 0}, {"skipped_parity", 0}, {"skipped_range", 0}};
  auto bump = [&](const char* key) { partial[key] = partial[key].get<std::uint64_t>() + 1; };

  for (BigInt start = cursor ? BigInt(*cursor + 1) : BigInt(2); start <= f_max; start += kFamilyBlock) {
    const BigInt end = std::min<BigInt>(start + kFamilyBlock - 1, f_max);
    for (BigInt f = start; f <= end; ++f) {
      auto attempt = try_family_pair(eta, delta, f);
      if (attempt.outcome == FamilyOutcome::Built) {
        attempt.pair->ordinal = partial["ordinal"].get<std::size_t>();
        bump("ordinal");
        session.sink().write(pair_record(*attempt.pair));
      } else if (attempt.outcome == FamilyOutcome::ParityFailure) {
        bump("skipped_parity");
      } else if (attempt.outcome == FamilyOutcome::BelowRange) {
        bump("skipped_range");
      }
    }
    session.unit_done(end);
  }
  session.finish();
  session.err() << "family " << eta << "/" << delta << ": " << partial["ordinal"].get<std::uint64_t>()
                << " pairs, " << partial["skipped_parity"].get<std::uint64_t>() << " parity skips, "
                << partial["skipped_range"].get<std::uint64_t>() << " range skips\n";
  return exit_code::kOk;
}

int run_pairs(Session& session) {
  const BigInt& m = session.bound("m");
  auto cursor = session.open();
  if (session.complete_on_disk() || cursor) return exit_code::kOk;
  const auto solutions = find_roots_for_M(m, session.bound("a-max"));
  for (const auto& pair : detect_pairs(m, solutions)) session.sink().write(pair_record(pair));
  session.unit_done(m);
  session.finish();
  return exit_code::kOk;
}

int run_dump_table(Session& session) {
  auto cursor = session.open();
  if (session.complete_on_disk() || cursor) return exit_code::kOk;
  for (const auto& row : table1()) {
    Record r = table_row_record(row);
    // CSV carries exactly the table columns, matching table1_csv().
    if (session.format() == Format::Csv) r.erase("row");
    session.sink().write(r);
  }
  session.finish();
  return exit_code::kOk;
}

int run_report(Session& session, const BigInt& first, const BigInt& last,
               const std::function<VerifyReport(const BigInt&)>& unit) {
  auto cursor = session.open();
  VerifyReport report;
  if (session.partial().is_object()) report = report_from_json(session.partial());
  if (!session.complete_on_disk()) {
    for (BigInt k = cursor ? BigInt(*cursor + 1) : first; k <= last; ++k) {
      report.merge(unit(k));
      session.partial() = to_json(report);
      session.unit_done(k);
    }
    session.finish();
  }
  session.write_report(report);
  session.err() << "swept " << report.swept << ", instances " << report.instances << ", skipped "
                << report.skipped << ", violations " << report.violations.size() << "\n";
  return report.ok() ? exit_code::kOk : exit_code::kViolations;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    Session session(config, out, err);
    switch (config.command) {
      case Command::Check: return run_check(session, out);
      case Command::Scan: return run_scan(session);
      case Command::Family: return run_family(session);
      case Command::Pairs: return run_pairs(session);
      case Command::DumpTable: return run_dump_table(session);
      case Command::VerifyTheorem: {
        const BigInt eta_max = session.bound("eta-max");
        const BigInt f_max = session.bound("f-max");
        return run_report(session, 1, session.bound("delta-max"),
                          [&](const BigInt& delta) { return verify_theorem_delta(delta, eta_max, f_max); });
      }
      case Command::VerifyNonexistence: {
        const BigInt a_max = session.bound("a-max");
        return run_report(session, 3, session.bound("m-max"),
                          [&](const BigInt& m) { return verify_nonexistence_m(m, a_max); });
      }
      case Command::CrossCheck: {
        const BigInt a_max = session.bound("a-max");
        return run_report(session, 2, session.bound("m-max"),
                          [&](const BigInt& m) { return cross_check_m(m, a_max); });
      }
    }
    throw UsageError("unknown command");
  } catch (const ExitRequest& request) {
    return request.code;
  } catch (const ClaimViolation& e) {
    err << "claim violation: " << e.what() << "\n";
    return exit_code::kViolations;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
}

}  // namespace consq::app
