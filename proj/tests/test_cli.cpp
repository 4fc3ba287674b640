#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "levymart/cli.hpp"
#include "levymart/errors.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = levy::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const std::vector<std::string>& args) {
  const Outcome o = run(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return json::parse(o.out);
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("levymart_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"describe", "brownian", "--no-such-flag"}).code, levy::cli::kExitUsage);
  EXPECT_EQ(run({"describe", "no-such-process"}).code, levy::cli::kExitUsage);
  EXPECT_EQ(run({"moments", "--process", "pareto-tail", "--n", "3"}).code, levy::cli::kExitUsage);
  EXPECT_EQ(run({"exp-solve", "--process", "brownian", "--alpha", "-1"}).code, 0);
  EXPECT_EQ(run({"exp-solve", "--process", "pareto-tail", "--alpha", "1"}).code,
            levy::cli::kExitUsage);
  EXPECT_EQ(run({"classify", "--process", "brownian", "--poly", "0,0,1"}).code, 0);
  EXPECT_EQ(run({}).code, levy::cli::kExitUsage);
}

TEST(Cli, ReportEnvelope) {
  const json j = report({"describe", "gamma"});
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["command"], "describe");
  EXPECT_TRUE(j["config"].contains("argv"));
  EXPECT_EQ(j["config"]["process"]["name"], "gamma");
}

TEST(Cli, ClassifyExamples) {
  const json a = report({"classify", "--process", "brownian", "--poly", "0,0,5"});
  EXPECT_EQ(a["result"]["verdict"], "martingale-function");
  EXPECT_NEAR(a["result"]["alpha"].get<double>(), 5.0, 1e-12);

  const json b = report({"classify", "--process", "brownian", "--poly", "0,0,0,1"});
  EXPECT_EQ(b["result"]["verdict"], "not-martingale-function");
  EXPECT_TRUE(b["result"]["alpha"].is_null());

  const json c = report({"classify", "--process", "brownian", "--expmix", "0.5,-1,0.5,1"});
  EXPECT_EQ(c["result"]["verdict"], "martingale-function");
  EXPECT_NEAR(c["result"]["alpha"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, FunceqSolve) {
  const json j = report({"funceq", "solve", "--p", "1,2", "--y", "1"});
  const auto q = j["result"]["q"].get<std::vector<double>>();
  ASSERT_EQ(q.size(), 3U);
  EXPECT_NEAR(q[0], 0.0, 1e-14);
  EXPECT_NEAR(q[1], 0.0, 1e-14);
  EXPECT_NEAR(q[2], 1.0, 1e-14);
  const json neg = report({"funceq", "solve", "--p", "-1,2", "--y", "1"});
  EXPECT_EQ(neg["result"]["degree"], 2);
}

TEST(Cli, ExpSolveDoesNotDependOnT) {
  const json a = report({"exp-solve", "--process", "brownian", "--alpha", "0.5", "--t", "1"});
  const json b = report({"exp-solve", "--process", "brownian", "--alpha", "0.5", "--t", "5"});
  auto ra = a["result"];
  auto rb = b["result"];
  ra.erase("t");
  rb.erase("t");
  EXPECT_EQ(ra.dump(), rb.dump());
  const auto roots = ra["roots"].get<std::vector<double>>();
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_NEAR(roots[0], -1.0, 1e-10);
  EXPECT_NEAR(roots[1], 1.0, 1e-10);
}

TEST(Cli, SimulateCsvAndBinary) {
  const fs::path csv = temp_file("paths.csv");
  const fs::path bin = temp_file("paths.bin");
  const Outcome o = run({"simulate", "--process", "brownian", "--t-max", "1", "--steps", "2",
                         "--paths", "4", "--seed", "3", "--csv", csv.string(), "--binary",
                         bin.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["result"]["n_paths"], 4);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "0,0.5,1");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 4);

  std::ifstream b(bin, std::ios::binary);
  char magic[4];
  b.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "LVYB");
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  b.read(reinterpret_cast<char*>(&n), 8);
  b.read(reinterpret_cast<char*>(&m), 8);
  EXPECT_EQ(n, 4U);
  EXPECT_EQ(m, 3U);
  std::vector<double> rest(m + n * m);
  b.read(reinterpret_cast<char*>(rest.data()), static_cast<std::streamsize>(rest.size() * 8));
  EXPECT_TRUE(b.good());
  EXPECT_EQ(rest[1], 0.5);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(rest[m + i], 0.0);  // column t = 0
  fs::remove(csv);
  fs::remove(bin);
}

TEST(Cli, RerunReproducesResult) {
  const fs::path first = temp_file("first.json");
  const fs::path second = temp_file("second.json");
  ASSERT_EQ(run({"mtg-test", "--process", "jump-diffusion", "--mode", "additive", "--f", "square",
                 "--paths", "20000", "--seed", "11", "--out", first.string()})
                .code,
            0);
  ASSERT_EQ(run({"rerun", first.string(), "--out", second.string()}).code, 0);
  std::ifstream a(first);
  std::ifstream b(second);
  const json ja = json::parse(a);
  const json jb = json::parse(b);
  EXPECT_EQ(ja["result"].dump(), jb["result"].dump());
  EXPECT_EQ(ja["config"]["argv"], jb["config"]["argv"]);
  fs::remove(first);
  fs::remove(second);
}

TEST(Cli, ParseFunction) {
  const auto p = levy::cli::parse_function("poly:1,0,2");
  ASSERT_TRUE(p.poly.has_value());
  EXPECT_DOUBLE_EQ(p.smooth.f(2.0), 9.0);
  const auto e = levy::cli::parse_function("expmix:1,0.5,0,0");
  ASSERT_TRUE(e.expmix.has_value());
  EXPECT_NEAR(e.smooth.f(2.0), std::exp(1.0), 1e-12);
  EXPECT_NEAR(levy::cli::parse_function("cosh").smooth.d2f(0.3), std::cosh(0.3), 1e-12);
  EXPECT_THROW(levy::cli::parse_function("wat"), levy::ValidationError);
  EXPECT_THROW(levy::cli::parse_csv("1,,2"), levy::ValidationError);
}
