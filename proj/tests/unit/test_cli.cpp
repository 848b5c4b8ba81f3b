#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "../../tools/cli.hpp"
#include "fixtures.hpp"

namespace perisched {
namespace {

namespace fs = std::filesystem;
using tools::run_cli;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "perisched");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("perisched_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

TEST_F(CliTest, GenSolveEvalAgree) {
  ASSERT_EQ(cli({"gen", "--count", "3", "--utilization", "0.9", "--seed", "5", "--out", path("corpus")}).code, 0);
  EXPECT_TRUE(fs::exists(path("corpus/instances.jsonl")));
  EXPECT_TRUE(fs::exists(path("corpus/witness.jsonl")));
  EXPECT_TRUE(fs::exists(path("corpus/manifest.json")));
  EXPECT_EQ(read_instances_file(path("corpus/instances.jsonl")).size(), 3u);

  CliRun solved = cli({"solve", "--corpus", path("corpus"), "--method", "leftmost", "--iterations", "300", "--seed",
                       "2", "--out", path("solved")});
  ASSERT_EQ(solved.code, 0) << solved.err;
  CliRun evaluated = cli({"eval", "--corpus", path("corpus"), "--schedules", path("solved/schedules.jsonl")});
  ASSERT_EQ(evaluated.code, 0) << evaluated.err;
  EXPECT_EQ(lines_of(evaluated.out), lines_of(testkit::read_text(path("solved/criteria.jsonl"))));
  EXPECT_TRUE(fs::exists(path("solved/trace.csv")));
}

TEST_F(CliTest, WitnessEvaluatesToZeroDegeneracy) {
  ASSERT_EQ(cli({"gen", "--count", "2", "--seed", "9", "--out", path("corpus")}).code, 0);
  CliRun evaluated = cli({"eval", "--corpus", path("corpus")});
  ASSERT_EQ(evaluated.code, 0);
  for (const std::string& line : lines_of(evaluated.out)) EXPECT_NE(line.find("\"dg_sum\":0"), std::string::npos) << line;
}

TEST_F(CliTest, SolveIsDeterministicForAFixedSeed) {
  ASSERT_EQ(cli({"gen", "--count", "2", "--utilization", "0.9", "--seed", "3", "--out", path("corpus")}).code, 0);
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(cli({"solve", "--corpus", path("corpus"), "--method", "flow", "--iterations", "200", "--seed", "4", "--out",
                   path(out)})
                  .code,
              0);
  }
  EXPECT_EQ(testkit::read_text(path("a/schedules.jsonl")), testkit::read_text(path("b/schedules.jsonl")));
}

TEST_F(CliTest, UsageErrorsExitWithOne) {
  ASSERT_EQ(cli({"gen", "--count", "1", "--out", path("corpus")}).code, 0);
  EXPECT_EQ(cli({"solve", "--corpus", path("corpus"), "--method", "bogus", "--out", path("x")}).code, tools::exit_usage);
  EXPECT_EQ(cli({"frobnicate"}).code, tools::exit_usage);
  EXPECT_EQ(cli({"eval", "--corpus", path("missing")}).code, tools::exit_usage);
  EXPECT_EQ(cli({"gen", "--kind", "3partition", "--n", "1", "--bound", "12", "--items", "3,4,5", "--out", path("p")}).code,
            tools::exit_usage);
}

TEST_F(CliTest, NoFeasibleResultExitsWithTwo) {
  ASSERT_EQ(cli({"gen", "--kind", "3partition", "--n", "2", "--bound", "15", "--items", "4,4,4,6,6,6", "--out",
                 path("corpus")})
                .code,
            0);
  CliRun solved = cli({"solve", "--corpus", path("corpus"), "--method", "leftmost", "--iterations", "50", "--out",
                       path("solved")});
  EXPECT_EQ(solved.code, tools::exit_infeasible);
  EXPECT_NE(testkit::read_text(path("solved/schedules.jsonl")).find("\"infeasible\":true"), std::string::npos);
}

TEST_F(CliTest, RenderIsByteStable) {
  ASSERT_EQ(cli({"gen", "--count", "1", "--seed", "2", "--out", path("corpus")}).code, 0);
  ASSERT_EQ(cli({"render", "--corpus", path("corpus"), "--out", path("r1")}).code, 0);
  ASSERT_EQ(cli({"render", "--corpus", path("corpus"), "--out", path("r2")}).code, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(path("r1"))) {
    ++files;
    std::string name = entry.path().filename().string();
    EXPECT_EQ(testkit::read_text(entry.path().string()), testkit::read_text(path("r2/" + name))) << name;
    EXPECT_NE(testkit::read_text(entry.path().string()).find("<svg"), std::string::npos);
  }
  EXPECT_TRUE(fs::exists(path("r1/instance1_gantt.svg")));
  EXPECT_GE(files, 2);
}

TEST_F(CliTest, PackWritesOneLinePerInstance) {
  ASSERT_EQ(cli({"gen", "--count", "2", "--seed", "2", "--out", path("corpus")}).code, 0);
  ASSERT_EQ(cli({"pack", "--corpus", path("corpus"), "--out", path("p")}).code, 0);
  EXPECT_EQ(lines_of(testkit::read_text(path("p/packings.jsonl"))).size(), 2u);
}

TEST_F(CliTest, BenchWritesTable) {
  ASSERT_EQ(cli({"gen", "--count", "2", "--utilization", "0.9", "--seed", "4", "--out", path("corpus")}).code, 0);
  CliRun bench = cli({"bench", "--corpus", path("corpus"), "--method", "leftmost,predecessor", "--iterations", "100",
                      "--out", path("b")});
  ASSERT_EQ(bench.code, 0) << bench.err;
  std::vector<std::string> rows = lines_of(testkit::read_text(path("b/bench.csv")));
  EXPECT_EQ(rows.size(), 3u);
  EXPECT_TRUE(fs::exists(path("b/summary.txt")));
  EXPECT_EQ(lines_of(testkit::read_text(path("b/cells.csv"))).size(), 5u);
}

}  // namespace
}  // namespace perisched
