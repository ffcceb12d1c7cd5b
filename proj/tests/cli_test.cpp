#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <sstream>

#include "lgtool/commands.hpp"

namespace lgtool {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(LG_DATA_DIR) + "/" + rel; }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

TEST(Exponent, Triangle) {
  auto r = call({"exponent", data("patterns/triangle.json")});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(has(r.out, "t=1/27 total=35/27≈1.296296")) << r.out;
  EXPECT_TRUE(has(r.out, "t1=1/48 t2=1/27"));
}

TEST(Exponent, PathAndBuiltins) {
  EXPECT_TRUE(has(call({"exponent", data("patterns/path3.json")}).out, "total=11/9"));
  EXPECT_TRUE(has(call({"exponent", "k4"}).out, "total=59/40"));
  EXPECT_EQ(call({"exponent", "cycle5"}).code, kSuccess);
}

TEST(Exponent, InvalidPattern) {
  auto r = call({"exponent", data("invalid/edge.json")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_TRUE(has(r.err, "k must be >= 3")) << r.err;
  EXPECT_EQ(call({"exponent", "no/such/file.json"}).code, kInputError);
}

TEST(Exponent, Json) {
  auto r = call({"exponent", "triangle", "--format", "json"});
  ASSERT_EQ(r.code, kSuccess);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["theorem3"]["total"], "35/27");
}

TEST(Verify, TriangleFixture) {
  auto r = call({"verify", "triangle", "--n", "14", "--r", "4", "--s", "1/2", "--samples", "500"});
  EXPECT_EQ(r.code, kSuccess) << r.out << r.err;
  EXPECT_FALSE(has(r.out, "FAIL"));
  EXPECT_TRUE(has(r.out, "edge-probability-hidden"));
  EXPECT_TRUE(has(r.out, " se="));
  EXPECT_TRUE(has(r.out, "materialize\tg2\tPASS"));
}

TEST(Verify, OddR) {
  auto r = call({"verify", "triangle", "--r", "5"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_TRUE(has(r.err, "r must be even")) << r.err;
}

TEST(Verify, HostTooSmall) {
  EXPECT_EQ(call({"verify", "triangle", "--n", "8", "--r", "4"}).code, kInfeasible);
}

TEST(Verify, DefaultHostSize) {
  auto r = call({"verify", "triangle", "--r", "4", "--samples", "100", "--construction", "g1"});
  EXPECT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(has(r.out, "# n=12 r=4")) << r.out;
}

TEST(Compare, TriangleRows) {
  auto r = call({"compare", "triangle", "--n", "1e6", "--walk-x", "3/5"});
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_TRUE(has(r.out, "walk_total\t4/3"));
  EXPECT_TRUE(has(r.out, "theorem3_total\t35/27"));
  EXPECT_TRUE(has(r.out, "walk_setup@x=3/5\t6/5"));
  EXPECT_TRUE(has(r.out, "walk_check@x=3/5\t13/10"));
}

TEST(Compare, DirectoryBatch) {
  auto r = call({"compare", data("patterns"), "--n", "1e6"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int headers = 0, rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("source\t", 0) == 0) {
      ++headers;
    } else if (!line.empty()) {
      ++rows;
    }
  }
  EXPECT_EQ(headers, 1);
  EXPECT_EQ(rows, 7 * 7);
  EXPECT_TRUE(has(r.out, "k4.json"));
}

TEST(Optimize, K4) {
  auto r = call({"optimize", data("patterns/k4.json"), "--n", "1e6", "--format", "json"});
  ASSERT_EQ(r.code, kSuccess);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["construction"], "g2");
  EXPECT_LE(j["log_cost"].get<double>(), 59.0 / 40 + 0.02);
  EXPECT_EQ(j["r"].get<int>() % 2, 0);
}

TEST(Optimize, TooSmall) { EXPECT_EQ(call({"optimize", "triangle", "--n", "3"}).code, kInfeasible); }

TEST(Run, BadArguments) {
  EXPECT_EQ(call({}).code, kInputError);
  EXPECT_EQ(call({"frobnicate"}).code, kInputError);
  EXPECT_EQ(call({"verify", "triangle", "--format", "xml"}).code, kInputError);
  EXPECT_EQ(call({"verify", "triangle", "--construction", "g3"}).code, kInputError);
  EXPECT_EQ(call({"verify", "triangle", "--samples", "0"}).code, kInputError);
  EXPECT_EQ(call({"exponent", "triangle", "--help"}).code, kSuccess);
}

TEST(Run, ByteIdenticalOutput) {
  std::vector<std::vector<std::string>> commands{
      {"verify", "triangle", "--n", "14", "--r", "4", "--s", "1/2", "--samples", "300", "--seed", "9"},
      {"optimize", "path3", "--n", "1e5", "--format", "json"},
      {"compare", data("patterns"), "--n", "1e6"},
  };
  for (const auto& c : commands) {
    auto a = call(c);
    auto b = call(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c.front();
  }
}

TEST(Run, SeedChangesMonteCarlo) {
  auto a = call({"verify", "triangle", "--n", "14", "--r", "4", "--samples", "300", "--seed", "1"});
  auto b = call({"verify", "triangle", "--n", "14", "--r", "4", "--samples", "300", "--seed", "2"});
  EXPECT_NE(a.out, b.out);
}

}  // namespace
}  // namespace lgtool
