// Copyright 2026 The agsdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "agsdiff/cli.hpp"
#include "agsdiff/io.hpp"
#include "agsdiff/store.hpp"
#include "examples.hpp"

namespace agsdiff {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    base_ = fs::temp_directory_path() /
            ("agsdiff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(base_);
    fs::create_directories(base_ / "suite");
    fs::copy_file(testing::fixture("login.ignore"), base_ / "suite" / "recheck.ignore");
    suite_ = (base_ / "suite").string();
  }
  void TearDown() override { fs::remove_all(base_); }

  CliRun check(const std::string& test, const std::string& input) {
    return cli({"check", "--suite", suite_, "--test", test, "--step", "login", input});
  }

  fs::path base_;
  std::string suite_;
  const std::string before_ = testing::fixture("login_before.ags.json");
  const std::string after_ = testing::fixture("login_after.ags.json");
};

TEST_F(CliTest, CheckExitCodes) {
  auto first = check("t1", before_);
  EXPECT_EQ(first.code, kExitGoldenMasterCreated) << first.err;
  EXPECT_EQ(check("t1", before_).code, kExitOk);
  auto changed = check("t1", after_);
  EXPECT_EQ(changed.code, kExitDifferences);
  EXPECT_NE(changed.out.find("onclick"), std::string::npos);
  EXPECT_TRUE(fs::exists(Suite::open(suite_).report_file({"t1", "login"})));
}

TEST_F(CliTest, CheckReadsSnapshots) {
  auto r = check("page", testing::fixture("page.snap.json"));
  EXPECT_EQ(r.code, kExitGoldenMasterCreated) << r.err;
  EXPECT_EQ(check("page", testing::fixture("page.snap.json")).code, kExitOk);
}

TEST_F(CliTest, Diff) {
  EXPECT_EQ(cli({"diff", before_, before_}).code, kExitOk);
  auto r = cli({"diff", "--rules", testing::fixture("login.ignore"), "--json", before_, after_});
  EXPECT_EQ(r.code, kExitDifferences);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["changed"].size(), 1u);
  EXPECT_EQ(cli({"diff", before_, after_}).code, kExitDifferences);
  EXPECT_EQ(cli({"diff", before_, (base_ / "missing.ags.json").string()}).code, kExitError);
}

TEST_F(CliTest, Bench) {
  auto r = cli({"bench", "--pages", "5", "--sizes", "200", "--strategies", "matching"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "page,strategy,rep,ms,tp,fn,fp,precision,recall");
  EXPECT_EQ(count_lines(r.out), 6u);
  const auto csv = (base_ / "bench.csv").string();
  const auto js = (base_ / "bench.json").string();
  r = cli({"bench", "--pages", "1", "--sizes", "100", "--out", csv, "--json", js});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(count_lines(read_file(csv)), 4u);
  EXPECT_EQ(nlohmann::json::parse(read_file(js))["aggregate"].size(), 3u);
  EXPECT_EQ(cli({"bench", "--sizes", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"bench", "--strategies", "fuzzy"}).code, kExitUsage);
  EXPECT_EQ(cli({"bench", "--reps", "0"}).code, kExitUsage);
}

TEST_F(CliTest, ReportAndAccept) {
  for (const char* t : {"t1", "t2"}) {
    check(t, before_);
    check(t, after_);
  }
  auto groups = cli({"report", "--suite", suite_, "--groups"});
  EXPECT_EQ(groups.code, kExitDifferences);
  EXPECT_EQ(count_lines(groups.out), 5u);
  EXPECT_NE(groups.out.find("x2"), std::string::npos);

  const auto report = Suite::open(suite_).report_file({"t1", "login"}).string();
  auto accepted = cli({"accept", "--suite", suite_, "--report", report, "--group", "0", "--propagate"});
  EXPECT_EQ(accepted.code, kExitOk) << accepted.err;
  EXPECT_EQ(count_lines(accepted.out), 2u);
  EXPECT_EQ(count_lines(read_file(Suite::open(suite_).journal_file().string())), 1u);
  EXPECT_EQ(count_lines(cli({"report", "--suite", suite_, "--groups"}).out), 4u);

  auto ignored = cli({"ignore", "--suite", suite_, "--rule", "attribute: onclick"});
  EXPECT_EQ(ignored.code, kExitOk) << ignored.err;
  EXPECT_EQ(ignored.out, "rule     attribute: onclick\n");
  EXPECT_EQ(count_lines(cli({"report", "--suite", suite_, "--groups"}).out), 3u);

  auto js = cli({"report", "--suite", suite_, "--test", "t1", "--json"});
  EXPECT_EQ(nlohmann::json::parse(js.out)["test_id"], "t1");

  EXPECT_EQ(cli({"accept", "--suite", suite_, "--all"}).code, kExitOk);
  EXPECT_EQ(cli({"report", "--suite", suite_}).code, kExitOk);
  EXPECT_EQ(check("t1", after_).code, kExitOk);
  // One line per accept_all group and step.
  EXPECT_EQ(count_lines(read_file(Suite::open(suite_).journal_file().string())), 8u);
}

TEST_F(CliTest, GroupOutOfRange) {
  check("t1", before_);
  check("t1", after_);
  auto r = cli({"accept", "--suite", suite_, "--group", "99"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("no group 99"), std::string::npos);
  EXPECT_EQ(cli({"accept", "--suite", suite_}).code, kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"diff", "--bogus", before_, before_}).code, kExitUsage);
  EXPECT_EQ(cli({"diff", before_}).code, kExitUsage);
  EXPECT_EQ(cli({"diff", "--strategy", "fuzzy", before_, before_}).code, kExitUsage);
  EXPECT_EQ(cli({"diff", "--t", "2", before_, before_}).code, kExitUsage);
  ::unsetenv("AGSDIFF_SUITE");
  auto r = cli({"check", "--test", "t", "--step", "s", before_});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("no suite"), std::string::npos);
  auto help = cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("bench"), std::string::npos);
  EXPECT_EQ(cli({"--version"}).out, "agsdiff 0.1.0\n");
}

TEST_F(CliTest, SuiteFromEnvironment) {
  ::setenv("AGSDIFF_SUITE", suite_.c_str(), 1);
  EXPECT_EQ(cli({"check", "--test", "t", "--step", "login", before_}).code, kExitGoldenMasterCreated);
  ::unsetenv("AGSDIFF_SUITE");
}

}  // namespace
}  // namespace agsdiff
