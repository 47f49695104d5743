#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdspace/cli.hpp"

namespace fs = std::filesystem;
using namespace pdspace::cli;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() / ("pdspace_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::string out() const { return out_.str(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST(FormatNumber, ShortestRoundTripWithCap) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(4.0 / 3.0), "1.33333333333");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-2.25), "-2.25");
}

TEST(RoundNumbers, OnlyFloatsAreRounded) {
  nlohmann::json j = {{"a", 1.0 / 3.0}, {"b", {2, 0.1 + 0.2}}, {"c", "x"}};
  auto r = round_numbers(j);
  EXPECT_EQ(r["a"].get<double>(), 0.333333333333);
  EXPECT_EQ(r["b"][0], 2);
  EXPECT_EQ(r["b"][1].get<double>(), 0.3);
  EXPECT_EQ(r["c"], "x");
}

TEST_F(Cli, DistExamples) {
  auto a = file("a.csv", "0,4\n");
  auto b = file("b.csv", "1,5\n");
  auto e = file("empty.csv", "");
  EXPECT_EQ(call({"dist", a, b, "--p", "inf"}), kWitnessed);
  EXPECT_EQ(out(), "1\n");
  EXPECT_EQ(call({"dist", a, a}), kWitnessed);
  EXPECT_EQ(out(), "0\n");
  EXPECT_EQ(call({"dist", a, e, "--p", "2"}), kWitnessed);
  EXPECT_EQ(out(), "2\n");
}

TEST_F(Cli, DistMatchingExport) {
  auto a = file("a.csv", "0,4\n");
  auto b = file("b.csv", "1,5\n");
  auto m = (dir_ / "m.json").string();
  ASSERT_EQ(call({"dist", a, b, "--matching", m}), kWitnessed);
  std::ifstream in(m);
  auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["value"].get<double>(), 1.0);
  ASSERT_EQ(j["pairs"].size(), 1u);
  EXPECT_EQ(j["pairs"][0]["cost"].get<double>(), 1.0);
}

TEST_F(Cli, PairwiseMatrixKeepsInputOrder) {
  std::vector<std::string> files;
  for (int i = 0; i < 6; ++i) files.push_back(file("d" + std::to_string(i) + ".csv", "0," + std::to_string(2 + i) + "\n"));
  std::vector<std::string> args = {"--format", "csv", "dist"};
  args.insert(args.end(), files.begin(), files.end());
  ASSERT_EQ(call(args), kWitnessed);
  std::string serial = out();
  args.insert(args.begin(), {"--jobs", "4"});
  ASSERT_EQ(call(args), kWitnessed);
  EXPECT_EQ(out(), serial);
  // from (0,5) on, sending both points to A (cost max(1, d/2)) beats the direct match
  EXPECT_EQ(serial.substr(0, serial.find('\n')), "0,1,2,2.5,3,3.5");
}

TEST_F(Cli, DistErrors) {
  auto a = file("a.csv", "0,4\n");
  EXPECT_EQ(call({"dist", a, file("bad.csv", "0,x\n")}), kBadInput);
  EXPECT_EQ(call({"dist", a, (dir_ / "missing.csv").string()}), kBadInput);
  EXPECT_EQ(call({"dist", a, a, "--p", "0.5"}), kBadInput);
  EXPECT_EQ(call({"dist", a}), kBadInput);
  auto euc = file("e.json", R"({"space": {"kind": "plane", "norm": "euclidean"}, "points": [{"coords": [0, 4]}]})");
  EXPECT_EQ(call({"dist", a, euc}), kSpaceMismatch);
  std::string big;
  for (int i = 0; i < 10000; ++i) big += std::to_string(i) + "," + std::to_string(i + 1) + "\n";
  EXPECT_EQ(call({"dist", a, file("big.csv", big), "--p", "2"}), kTooLarge);
}

TEST_F(Cli, GeodesicFrames) {
  auto a = file("a.csv", "0,4\n");
  auto b = file("b.csv", "1,5\n");
  ASSERT_EQ(call({"--format", "csv", "geodesic", a, b, "--steps", "2"}), kWitnessed);
  EXPECT_EQ(out(), "t,x0,x1,mult\n0,0,4,1\n0.5,0.5,4.5,1\n1,1,5,1\n# midpoint-check WITNESSED\n");

  ASSERT_EQ(call({"geodesic", a, b, "--steps", "1"}), kWitnessed);
  auto j = nlohmann::json::parse(out());
  EXPECT_EQ(j["frames"].size(), 2u);
  EXPECT_EQ(j["midpoint_check"]["verdict"], "WITNESSED");

  ASSERT_EQ(call({"geodesic", a, a, "--steps", "4"}), kWitnessed);
  j = nlohmann::json::parse(out());
  ASSERT_EQ(j["frames"].size(), 5u);
  for (const auto& f : j["frames"]) EXPECT_EQ(f["diagram"], j["frames"][0]["diagram"]);
}

TEST_F(Cli, GeodesicNeedsAnOracle) {
  auto space = file("space.json", R"({"kind": "finite", "matrix": [[0, 1], [1, 0]], "A": [0]})");
  auto a = file("a.json", R"({"points": [{"coords": [1]}]})");
  EXPECT_EQ(call({"--space", space, "geodesic", a, a}), kNoGeodesic);
}

TEST_F(Cli, ProbeExamples) {
  ASSERT_EQ(call({"probe", "c0-gap", "--m", "3"}), kWitnessed);
  auto j = nlohmann::json::parse(out());
  EXPECT_EQ(j["probe"], "c0-gap");
  EXPECT_EQ(j["witnesses"]["value"].get<double>(), 1.33333333333);
  EXPECT_EQ(call({"probe", "adversary", "--candidates", "0"}), kWitnessed);
  EXPECT_EQ(call({"probe", "eps-net"}), kRefuted);
  EXPECT_EQ(call({"--space", "half-line", "probe", "eps-net"}), kInconclusive);
  EXPECT_EQ(call({"probe", "c0-gap", "--m", "13"}), kTooLarge);
  EXPECT_EQ(call({"probe", "no-such-probe"}), kBadInput);
  EXPECT_EQ(call({"--tolerance", "-1", "probe", "c0-gap"}), kBadInput);
}

TEST_F(Cli, ProbeTraceFile) {
  auto trace = (dir_ / "trace.csv").string();
  ASSERT_EQ(call({"probe", "vanishing-pair", "--trace", trace}), kWitnessed);
  std::ifstream in(trace);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 51u);
}

TEST_F(Cli, IsolatedBoundOnFiles) {
  auto space = file("space.json", R"({"kind": "finite", "matrix": [[0, 1, 1], [1, 0, 1], [1, 1, 0]], "A": [0]})");
  auto x = file("x.json", R"({"points": [{"coords": [1]}]})");
  auto y = file("y.json", R"({"points": [{"coords": [2]}]})");
  ASSERT_EQ(call({"--space", space, "probe", "isolated-bound", x, y}), kWitnessed);
  auto j = nlohmann::json::parse(out());
  EXPECT_EQ(j["witnesses"]["epsilon"].get<double>(), 1.0);
  EXPECT_EQ(call({"--space", space, "probe", "isolated-bound", x, x}), kBadInput);
}

TEST_F(Cli, SeededProbesAreDeterministic) {
  for (std::string name : {"isolated-bound", "eps-net", "dense-family", "adversary"}) {
    std::vector<std::string> args = {"--seed", "17"};
    if (name == "dense-family") args.insert(args.end(), {"--space", "half-line"});
    args.insert(args.end(), {"probe", name});
    int first_code = call(args);
    std::string first = out();
    EXPECT_EQ(call(args), first_code);
    EXPECT_EQ(out(), first) << name;
  }
}
