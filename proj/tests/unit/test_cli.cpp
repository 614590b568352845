#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gridiron/cli/dispatch.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = GRIDIRON_FIXTURES;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gridiron");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = gridiron::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ok() { return (kFixtures / "ok").string(); }

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("gridiron_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, ValidateOk) {
  auto r = run({"validate", "--data", ok()});
  EXPECT_EQ(r.code, gridiron::cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("severity,code,message", 0), 0u);
}

TEST(Cli, BadDataExitsOne) {
  auto r = run({"fit", "--data", (kFixtures / "bad").string()});
  EXPECT_EQ(r.code, gridiron::cli::kExitData);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"predict", "--week", "3"}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({"validate", "--bogus"}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({"cv", "--data", ok(), "--threads", "0"}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({"validate", "--data", ok(), "--format", "xml"}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({"synth"}).code, gridiron::cli::kExitUsage);
  EXPECT_EQ(run({"validate"}).code, gridiron::cli::kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, gridiron::cli::kExitOk);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST(Cli, FourthDownChartCoversTheField) {
  auto r = run({"fourth-down", "--data", ok()});
  ASSERT_EQ(r.code, gridiron::cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("l,e_plus,e_minus,e_net,recommend", 0), 0u);
  EXPECT_EQ(count_lines(r.out), 100);
}

TEST(Cli, JsonLines) {
  auto r = run({"fourth-down", "--data", ok(), "--format", "json-lines"});
  ASSERT_EQ(r.code, gridiron::cli::kExitOk) << r.err;
  EXPECT_EQ(count_lines(r.out), 99);
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    ASSERT_TRUE(j.contains("l"));
    ASSERT_TRUE(j.contains("recommend"));
  }
}

TEST(Cli, SynthThenRankAndCv) {
  auto dir = scratch("synth");
  auto r = run({"synth", "--out", dir.string(), "--seed", "5"});
  ASSERT_EQ(r.code, gridiron::cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "games.csv"));
  EXPECT_TRUE(fs::exists(dir / "stats.csv"));

  auto a = run({"rank", "--data", dir.string(), "--season", "2009", "--week", "10"});
  ASSERT_EQ(a.code, gridiron::cli::kExitOk) << a.err;
  EXPECT_EQ(a.out.rfind("season,week,team,score,rank", 0), 0u);

  auto c1 = run({"cv", "--data", dir.string(), "--seed", "3"});
  auto c2 = run({"cv", "--data", dir.string(), "--seed", "3", "--threads", "3"});
  ASSERT_EQ(c1.code, gridiron::cli::kExitOk) << c1.err;
  EXPECT_EQ(c1.out, c2.out);
  fs::remove_all(dir);
}

TEST(Cli, PredictIsDeterministic) {
  auto dir = scratch("predict");
  ASSERT_EQ(run({"synth", "--out", dir.string()}).code, gridiron::cli::kExitOk);
  std::vector<std::string> args = {"predict", "--data", dir.string(), "--week", "8",
                                   "--bootstrap", "100", "--seed", "11"};
  auto a = run(args);
  ASSERT_EQ(a.code, gridiron::cli::kExitOk) << a.err;
  args.insert(args.end(), {"--threads", "4"});
  auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("season,week,game_id,home,away,p_home_mean", 0), 0u);
  EXPECT_EQ(run({"predict", "--data", dir.string(), "--week", "8", "--bootstrap", "1"}).code,
            gridiron::cli::kExitUsage);
  fs::remove_all(dir);
}
