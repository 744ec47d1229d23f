#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chdyn/error.hpp"
#include "cli.hpp"

using namespace chdyn;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  for (std::string w; is >> w;) parts.push_back(w);
  return parts;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("chdyn_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Parse, Complex) {
  EXPECT_EQ(cli::parse_complex("10+0i"), Complex(10, 0));
  EXPECT_EQ(cli::parse_complex("0.2+1.592i"), Complex(0.2, 1.592));
  EXPECT_EQ(cli::parse_complex("-1-2i"), Complex(-1, -2));
  EXPECT_EQ(cli::parse_complex("3"), Complex(3, 0));
  EXPECT_EQ(cli::parse_complex("2.5i"), Complex(0, 2.5));
  EXPECT_EQ(cli::parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(cli::parse_complex("1e-3-4e2i"), Complex(1e-3, -4e2));
  EXPECT_THROW(cli::parse_complex("abc"), InvalidArgument);
  EXPECT_THROW(cli::parse_complex("1+"), InvalidArgument);
  EXPECT_TRUE(cli::parse_point("inf").is_infinite());
}

TEST(Parse, Window) {
  const auto w = cli::parse_window("-1,4,-2.5,2.5", "500x400");
  EXPECT_EQ(w, (GridWindow{-1, 4, -2.5, 2.5, 500, 400}));
  EXPECT_THROW(cli::parse_window("1,0,0,1", "2x2"), InvalidArgument);
  EXPECT_THROW(cli::parse_window("0,1,0,1", "2by2"), InvalidArgument);
}

TEST(Cli, DynWritesImage) {
  const auto path = tmp("o3.ppm");
  const auto r = run_cli({"dyn", "--family", "O", "--n", "3", "--alpha", "10+0i", "--window",
                          "-10,10,-10,10", "--size", "64x64", "-o", path});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(slurp(path).size(), 11u + 2u + 3u * 64 * 64);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("command"), "dyn");
  std::filesystem::remove(path);
}

TEST(Cli, DynDegenerateIsUsageError) {
  const auto r = run_cli({"dyn", "--family", "O", "--n", "3", "--alpha", "0.5+0i", "--size",
                          "8x8", "-o", tmp("d.ppm")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("degenerate"), std::string::npos) << r.err;
}

TEST(Cli, DynNewton) {
  const auto path = tmp("newton.ppm");
  EXPECT_EQ(run_cli({"dyn", "--family", "newton", "--n", "3", "--size", "32x32", "-o", path}).code,
            cli::kExitOk);
  std::filesystem::remove(path);
}

TEST(Cli, Param) {
  const auto path = tmp("p.ppm");
  for (const char* n : {"3", "5"}) {
    const auto r = run_cli({"param", "--n", n, "--window", "-1,4,-2.5,2.5", "--size", "40x40",
                            "-o", path});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  }
  EXPECT_EQ(run_cli({"param", "--n", "1", "--size", "8x8", "-o", path}).code, cli::kExitUsage);
  std::filesystem::remove(path);
}

TEST(Cli, ProbeVerdicts) {
  auto r = run_cli({"probe", "--n", "2", "--alpha", "9+0i", "--resolution", "512"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("verdict"), "InfinitelyConnected");
  r = run_cli({"probe", "--n", "3", "--alpha", "10+0i", "--resolution", "512"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("verdict"), "InfinitelyConnected");
  EXPECT_EQ(run_cli({"probe", "--n", "3", "--alpha", "1.25+0i"}).code, cli::kExitUsage);
}

TEST(Cli, Verify) {
  auto r = run_cli({"verify", "--lemma", "escape-b", "--a", "20"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  r = run_cli({"verify", "--lemma", "zero-interval", "--n", "3", "--alpha", "10"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"z0\":17.9639"), std::string::npos) << r.out;
  r = run_cli({"verify", "--all", "--n", "3", "--alpha", "1000"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream lines(r.out);
  int count = 0;
  for (std::string line; std::getline(lines, line);) {
    const auto j = json::parse(line);
    if (count > 0) {
      EXPECT_TRUE(j.at("pass").get<bool>()) << line;
    }
    ++count;
  }
  EXPECT_GE(count, 6);
}

TEST(Cli, VerifyFailureExitCode) {
  const auto r = run_cli({"verify", "--lemma", "escape-r", "--n", "3", "--alpha", "0.1"});
  const bool pass = r.out.find("\"pass\":true") != std::string::npos;
  EXPECT_EQ(r.code, pass ? cli::kExitOk : cli::kExitFailure);
}

TEST(Cli, Preimages) {
  auto r = run_cli({"preimages", "--family", "B", "--a", "5", "--w", "inf"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto j = json::parse(r.out);
  ASSERT_EQ(j.at("preimages").size(), 1u);
  EXPECT_EQ(j.at("preimages")[0].at("z"), "0.20000000000000001+0i");
  r = run_cli({"preimages", "--family", "B", "--a", "5", "--w", "0"});
  j = json::parse(r.out);
  ASSERT_EQ(j.at("preimages").size(), 2u);
  EXPECT_EQ(j.at("preimages")[0].at("multiplicity"), 3);
  EXPECT_EQ(j.at("preimages")[1].at("z"), "5+0i");
  r = run_cli({"preimages", "--family", "O", "--n", "2", "--alpha", "3", "--w", "1"});
  j = json::parse(r.out);
  EXPECT_EQ(j.at("count"), 4);
  bool triple = false;
  for (const auto& p : j.at("preimages")) triple = triple || p.at("multiplicity") == 3;
  EXPECT_TRUE(triple);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"dyn", "--family", "O", "--n", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--lemma", "nope", "--a", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--all", "--lemma", "escape-b", "--a", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"dyn", "--family", "O", "--n", "3", "--alpha", "x", "-o", tmp("x")}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST(Cli, ReplayReproducesOutput) {
  const auto path = tmp("replay.ppm");
  const auto first = run_cli({"dyn", "--family", "Oc", "--n", "3", "--alpha", "0.2+1.592i", "--c",
                              "-1+2i", "--window", "-2,2,-2,2", "--size", "48x40", "-o", path});
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  const auto bytes = slurp(path);
  const auto j = json::parse(first.out);
  const auto second = run_cli(split(j.at("replay").get<std::string>()));
  ASSERT_EQ(second.code, cli::kExitOk) << second.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(slurp(path), bytes);
  std::filesystem::remove(path);
}

TEST(Cli, WorkersDoNotChangeReports) {
  const std::vector<std::string> base{"param", "--n", "3", "--size", "50x50", "-o", tmp("w.ppm")};
  auto with = [&](const std::string& w) {
    auto args = base;
    args.insert(args.end(), {"--workers", w});
    return run_cli(args);
  };
  const auto a = with("1");
  const auto b = with("8");
  EXPECT_EQ(a.code, cli::kExitOk);
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(tmp("w.ppm"));
}

TEST(Cli, ReportFile) {
  const auto path = tmp("report.jsonl");
  const auto r = run_cli({"verify", "--lemma", "escape-b", "--a", "20", "--report", path});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(path).find("\"lemma\":\"escape-b\""), std::string::npos);
  std::filesystem::remove(path);
}
