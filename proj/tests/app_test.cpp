#include "consq/app/checkpoint.hpp"
#include "consq/app/records.hpp"
#include "consq/app/run.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace consq::app;

namespace {

class AppTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("consq_app_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("CONSQ_OUTPUT_DIR");
  }
  void TearDown() override {
    ::unsetenv("CONSQ_OUTPUT_DIR");
    fs::remove_all(dir_);
  }

  static RunConfig config(Command command, std::map<std::string, consq::BigInt> bounds) {
    RunConfig c;
    c.command = command;
    c.bounds = std::move(bounds);
    return c;
  }

  int run_quiet(const RunConfig& c) {
    out_.str("");
    err_.str("");
    return run(c, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(AppTest, CheckSquare) {
  EXPECT_EQ(run_quiet(config(Command::Check, {{"a", 44}, {"m", 50}})), exit_code::kOk);
  EXPECT_EQ(out_.str(), "m=50 a=44 total=245025 s=495\n");
}

TEST_F(AppTest, CheckNotSquareIsNotAnError) {
  EXPECT_EQ(run_quiet(config(Command::Check, {{"a", 2}, {"m", 3}})), exit_code::kOk);
  EXPECT_NE(out_.str().find("not a square"), std::string::npos);
  auto c = config(Command::Check, {{"a", 2}, {"m", 3}});
  c.format = Format::Jsonl;
  EXPECT_EQ(run_quiet(c), exit_code::kOk);
  EXPECT_EQ(out_.str(), "{\"m\":\"3\",\"a\":\"2\",\"total\":\"29\",\"s\":null}\n");
}

TEST_F(AppTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_quiet(config(Command::Check, {{"a", 0}, {"m", 3}})), exit_code::kUsage);
  EXPECT_EQ(run_quiet(config(Command::Check, {{"a", 1}})), exit_code::kUsage);
  EXPECT_EQ(run_quiet(config(Command::Scan, {{"m-min", 5}, {"m-max", 4}, {"a-max", 10}})), exit_code::kUsage);
  EXPECT_EQ(run_quiet(config(Command::Family, {{"eta", 2}, {"delta", 4}, {"f-max", 10}})), exit_code::kUsage);
  EXPECT_EQ(run_quiet(config(Command::Check, {{"a", 1}, {"m", 2}, {"x", 1}})), exit_code::kUsage);
}

TEST_F(AppTest, VerifyTheoremReport) {
  EXPECT_EQ(run_quiet(config(Command::VerifyTheorem, {{"delta-max", 12}, {"eta-max", 12}, {"f-max", 300}})),
            exit_code::kOk);
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_TRUE(doc.at("violations").empty());
  EXPECT_GT(doc.at("instances").get<int>(), 0);
  for (const char* key : {"swept", "instances", "per_row", "violations", "skipped"}) EXPECT_TRUE(doc.contains(key));
}

TEST_F(AppTest, ScanJsonlRecordsUseDecimalStrings) {
  EXPECT_EQ(run_quiet(config(Command::Scan, {{"m-min", 24}, {"m-max", 24}, {"a-max", 10}})), exit_code::kOk);
  EXPECT_EQ(out_.str(),
            "{\"m\":\"24\",\"a\":\"1\",\"total\":\"4900\",\"s\":\"70\"}\n"
            "{\"m\":\"24\",\"a\":\"9\",\"total\":\"11236\",\"s\":\"106\"}\n");
}

TEST_F(AppTest, PairsRecordSchema) {
  EXPECT_EQ(run_quiet(config(Command::Pairs, {{"m", 2}, {"a-max", 100}})), exit_code::kOk);
  EXPECT_EQ(out_.str(),
            "{\"eta\":\"11\",\"delta\":\"1\",\"f\":\"17\",\"m\":\"2\",\"a1\":\"3\",\"a2\":\"20\",\"s1\":\"5\","
            "\"s2\":\"29\",\"eq3\":true}\n");
}

TEST_F(AppTest, DumpTableHasTwentyRows) {
  EXPECT_EQ(run_quiet(config(Command::DumpTable, {})), exit_code::kOk);
  EXPECT_EQ(out_.str(), consq::table1_csv());
  auto c = config(Command::DumpTable, {});
  c.format = Format::Jsonl;
  EXPECT_EQ(run_quiet(c), exit_code::kOk);
  const auto text = out_.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 20);
}

TEST_F(AppTest, RefusesExistingOutputUnlessForced) {
  auto c = config(Command::Scan, {{"m-min", 2}, {"m-max", 12}, {"a-max", 100}});
  c.output_path = dir_ / "scan.jsonl";
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  const auto first = slurp(*c.output_path);
  EXPECT_EQ(run_quiet(c), exit_code::kUsage);
  c.force = true;
  EXPECT_EQ(run_quiet(c), exit_code::kOk);
  EXPECT_EQ(slurp(*c.output_path), first);
}

TEST_F(AppTest, EmptyStreamWritesValidEmptyFile) {
  auto c = config(Command::Scan, {{"m-min", 3}, {"m-max", 3}, {"a-max", 100}});
  c.output_path = dir_ / "empty.jsonl";
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  EXPECT_TRUE(fs::exists(*c.output_path));
  EXPECT_EQ(fs::file_size(*c.output_path), 0u);
}

TEST_F(AppTest, ResumeRefusesDifferentFingerprint) {
  auto c = config(Command::Scan, {{"m-min", 2}, {"m-max", 40}, {"a-max", 500}});
  c.output_path = dir_ / "scan.jsonl";
  c.interrupt_after = 5;
  ASSERT_EQ(run_quiet(c), exit_code::kInterrupted);
  c.interrupt_after.reset();
  c.resume = true;
  c.bounds["a-max"] = 600;
  EXPECT_EQ(run_quiet(c), exit_code::kUsage);
  EXPECT_NE(err_.str().find("different run"), std::string::npos);
}

TEST_F(AppTest, CorruptCheckpointRefused) {
  auto c = config(Command::Scan, {{"m-min", 2}, {"m-max", 40}, {"a-max", 200}});
  c.output_path = dir_ / "scan.jsonl";
  c.interrupt_after = 3;
  ASSERT_EQ(run_quiet(c), exit_code::kInterrupted);
  std::ofstream(checkpoint_path_for(*c.output_path)) << "{not json";
  c.interrupt_after.reset();
  c.resume = true;
  EXPECT_EQ(run_quiet(c), exit_code::kUsage);
}

TEST_F(AppTest, UnwritableOutputExitsTwo) {
  auto c = config(Command::Scan, {{"m-min", 2}, {"m-max", 3}, {"a-max", 10}});
  c.output_path = dir_ / "missing_dir" / "scan.jsonl";
  EXPECT_EQ(run_quiet(c), exit_code::kUsage);
}

TEST_F(AppTest, OutputDirFromEnvironment) {
  ::setenv("CONSQ_OUTPUT_DIR", dir_.c_str(), 1);
  ASSERT_EQ(run_quiet(config(Command::Scan, {{"m-min", 2}, {"m-max", 2}, {"a-max", 100}})), exit_code::kOk);
  EXPECT_TRUE(out_.str().empty());
  EXPECT_EQ(slurp(dir_ / "scan.jsonl"),
            "{\"m\":\"2\",\"a\":\"3\",\"total\":\"25\",\"s\":\"5\"}\n"
            "{\"m\":\"2\",\"a\":\"20\",\"total\":\"841\",\"s\":\"29\"}\n");
}

TEST_F(AppTest, ReportResumeMatchesUninterrupted) {
  auto c = config(Command::VerifyTheorem, {{"delta-max", 20}, {"eta-max", 20}, {"f-max", 500}});
  c.output_path = dir_ / "whole.json";
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  const auto whole = slurp(*c.output_path);

  c.output_path = dir_ / "parts.json";
  c.interrupt_after = 7;
  ASSERT_EQ(run_quiet(c), exit_code::kInterrupted);
  EXPECT_FALSE(fs::exists(*c.output_path));
  c.interrupt_after.reset();
  c.resume = true;
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  EXPECT_EQ(slurp(*c.output_path), whole);
}

TEST_F(AppTest, FamilyResumeKeepsOrdinalAndRecords) {
  auto c = config(Command::Family, {{"eta", 11}, {"delta", 1}, {"f-max", 4000}});
  c.output_path = dir_ / "whole.csv";
  c.format = Format::Csv;
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  const auto whole = slurp(*c.output_path);

  c.output_path = dir_ / "parts.csv";
  c.interrupt_after = 3;
  ASSERT_EQ(run_quiet(c), exit_code::kInterrupted);
  c.interrupt_after.reset();
  c.resume = true;
  ASSERT_EQ(run_quiet(c), exit_code::kOk);
  EXPECT_EQ(slurp(*c.output_path), whole);
}

TEST(Records, PersistDedupesOnAppend) {
  const auto path = fs::temp_directory_path() / "consq_persist.jsonl";
  fs::remove(path);
  const std::vector<Record> batch = {instance_record({3, 2, 25, 5}), instance_record({20, 2, 841, 29})};
  EXPECT_EQ(persist(batch, path, Format::Jsonl, WriteMode::Fresh), 2u);
  EXPECT_THROW(persist(batch, path, Format::Jsonl, WriteMode::Fresh), UsageError);
  EXPECT_EQ(persist(batch, path, Format::Jsonl, WriteMode::Append), 0u);
  EXPECT_EQ(persist(batch, path, Format::Jsonl, WriteMode::Force), 2u);
  fs::remove(path);
}

TEST(Records, ParseInvertsFormat) {
  const Record r = instance_record({44, 50, 245025, 495});
  for (auto f : {Format::Jsonl, Format::Csv, Format::Human}) {
    EXPECT_EQ(parse_record(format_record(r, f), f, csv_header(r)), r) << format_name(f);
  }
  EXPECT_EQ(dedupe_key(r), "instance:50/44");
}

TEST(Config, FingerprintIgnoresPathsAndFlags) {
  RunConfig a;
  a.command = Command::Scan;
  a.bounds = {{"m-min", 2}, {"m-max", 9}, {"a-max", 10}};
  RunConfig b = a;
  b.output_path = "x";
  b.resume = true;
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  b.prefilter = true;
  EXPECT_NE(fingerprint(a), fingerprint(b));
  EXPECT_EQ(fingerprint(a).size(), 16u);
}

TEST(Checkpoint, SaveLoad) {
  const auto path = fs::temp_directory_path() / "consq_ckpt_test.ckpt";
  Checkpoint c{"abc", "17", 4, 99, false, nlohmann::json{{"k", 1}}};
  save_checkpoint(path, c);
  const auto back = load_checkpoint(path);
  ASSERT_TRUE(back);
  EXPECT_EQ(back->fingerprint, "abc");
  EXPECT_EQ(back->last_completed, "17");
  EXPECT_EQ(back->emitted, 4u);
  EXPECT_EQ(back->bytes, 99u);
  EXPECT_EQ(back->partial, c.partial);
  fs::remove(path);
  EXPECT_FALSE(load_checkpoint(path));
}
