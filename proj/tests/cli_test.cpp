#include "dsmt/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "dsmt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dsmt::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "dsmt_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(CliGen, ThreeAtomsTable) {
  const CliRun r = run({"gen", "--n", "3"});
  ASSERT_EQ(0, r.code) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(20u, ls.size());
  EXPECT_EQ(0u, ls[0].rfind("index", 0));
  EXPECT_NE(ls.back().find("1111111"), std::string::npos);
  EXPECT_NE(ls.back().find("t1|t2|t3"), std::string::npos);
  EXPECT_EQ(0u, ls.back().rfind("18 ", 0));
}

TEST(CliGen, GoldenFormats) {
  EXPECT_EQ("index  bits  hex  dnf\n"
            "0      0     0    0\n"
            "1      1     1    t1\n",
            run({"gen", "--n", "1"}).out);
  EXPECT_EQ("index,bits,hex,dnf\n0,0,0,0\n1,1,1,t1\n", run({"gen", "--n", "1", "--format", "csv"}).out);
  EXPECT_EQ("[\n"
            "  {\"index\": 0, \"bits\": \"0\", \"hex\": \"0\", \"dnf\": \"0\"},\n"
            "  {\"index\": 1, \"bits\": \"1\", \"hex\": \"1\", \"dnf\": \"t1\"}\n"
            "]\n",
            run({"gen", "--n", "1", "--format", "structured"}).out);
}

TEST(CliGen, StructuredOutputParses) {
  const CliRun r = run({"gen", "--n", "3", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(19u, doc.size());
  EXPECT_EQ("0010111", doc[9]["bits"]);
  EXPECT_EQ("t1&t2|t1&t3|t2&t3", doc[9]["dnf"]);
}

TEST(CliGen, Deterministic) {
  const CliRun a = run({"gen", "--n", "4", "--format", "csv"});
  const CliRun b = run({"gen", "--n", "4", "--format", "csv"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(168u, lines(a.out).size());
}

TEST(CliGen, CapacityRefusal) {
  const CliRun r = run({"gen", "--n", "7"});
  EXPECT_EQ(4, r.code);
  EXPECT_NE(r.err.find("2414682040997"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliCanon, Examples) {
  const CliRun r = run({"canon", "--n", "3", "--expr", "((t1&t2)|t3)&(t1|t2)", "--format", "csv"});
  ASSERT_EQ(0, r.code);
  EXPECT_EQ("bits,hex,dnf\n0010111,17,t1&t2|t1&t3|t2&t3\n", r.out);
}

TEST(CliCanon, ParseErrorExitsTwoWithOffset) {
  const CliRun r = run({"canon", "--n", "3", "--expr", "t1 &"});
  EXPECT_EQ(2, r.code);
  EXPECT_NE(r.err.find("offset 4"), std::string::npos) << r.err;
  const CliRun range = run({"canon", "--n", "2", "--expr", "t1|t3"});
  EXPECT_EQ(2, range.code);
  EXPECT_NE(range.err.find("offset 3"), std::string::npos) << range.err;
}

TEST(CliCount, Methods) {
  EXPECT_EQ("7828354\n", run({"count", "--n", "6", "--method", "lookup"}).out);
  EXPECT_EQ("168\n", run({"count", "--n", "4", "--method", "brute"}).out);
  EXPECT_EQ("168\n", run({"count", "--n", "4", "--method", "formula"}).out);
  EXPECT_EQ("56130437228687557907788\n", run({"count", "--n", "8"}).out);
  EXPECT_EQ(4, run({"count", "--n", "5", "--method", "brute"}).code);
  EXPECT_EQ(4, run({"count", "--n", "5", "--method", "formula"}).code);
  EXPECT_EQ(1, run({"count", "--n", "9"}).code);
  EXPECT_EQ(1, run({"count", "--n", "3", "--method", "guess"}).code);
}

TEST(CliMemsize, Csv) {
  const CliRun r = run({"memsize", "--max", "4", "--format", "csv"});
  ASSERT_EQ(0, r.code);
  EXPECT_EQ("n,bytes_per_elem,elements,total_bytes,size,refined_powerset\n"
            "2,1,4,4,4 bytes,8\n"
            "3,1,18,18,18 bytes,128\n"
            "4,2,166,332,0.32 Kb,32768\n",
            r.out);
  EXPECT_EQ(1, run({"memsize", "--max", "9"}).code);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(1, run({}).code);
  EXPECT_EQ(1, run({"frobnicate"}).code);
  EXPECT_EQ(1, run({"gen"}).code);
  EXPECT_EQ(1, run({"gen", "--n", "3", "--format", "xml"}).code);
  EXPECT_EQ(0, run({"--help"}).code);
}

namespace {

const char* kDsmA = R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.6},{"expr":"t1|t2","mass":0.4}]})";
const char* kDsmB = R"({"n":2,"model":"dsm","masses":[{"expr":"t2","mass":0.3},{"expr":"t1|t2","mass":0.7}]})";

}  // namespace

TEST(CliFuse, DsmTable) {
  const std::string a = write_temp("a.json", kDsmA);
  const std::string b = write_temp("b.json", kDsmB);
  const CliRun r = run({"fuse", "--rule", "dsm", "--bba", a, b, "--precision", "2"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ("expr      bits  mass\n"
            "t1&t2     001   0.18\n"
            "t2        011   0.12\n"
            "t1        101   0.42\n"
            "t1|t2     111   0.28\n"
            "conflict        0.00\n",
            r.out);
}

TEST(CliFuse, DsmStructured) {
  const std::string a = write_temp("a.json", kDsmA);
  const std::string b = write_temp("b.json", kDsmB);
  const CliRun r = run({"fuse", "--rule", "dsm", "--bba", a, b, "--format", "structured"});
  ASSERT_EQ(0, r.code) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ("dsm", doc["rule"]);
  ASSERT_EQ(4u, doc["focal"].size());
  EXPECT_NEAR(0.18, doc["focal"][0]["mass"].get<double>(), 1e-9);
  EXPECT_EQ(0.0, doc["conflict"].get<double>());
}

TEST(CliFuse, DempsterAndFullContradiction) {
  const std::string a = write_temp("da.json", R"({"n":2,"model":"dst","masses":[{"expr":"t1","mass":1}]})");
  const std::string b = write_temp("db.json", R"({"n":2,"model":"dst","masses":[{"expr":"t2","mass":1}]})");
  const CliRun r = run({"fuse", "--rule", "dempster", "--bba", a, b});
  EXPECT_EQ(3, r.code);
  EXPECT_TRUE(r.out.empty());

  const std::string c =
      write_temp("dc.json", R"({"n":2,"model":"dst","masses":[{"expr":"t1","mass":0.5},{"expr":"t1|t2","mass":0.5}]})");
  const CliRun y = run({"fuse", "--rule", "yager", "--bba", c, b, "--format", "csv", "--precision", "2"});
  ASSERT_EQ(0, y.code) << y.err;
  EXPECT_EQ("expr,bits,mass\nt2,011,0.50\nt1|t2,111,0.50\nconflict,,0.50\n", y.out);

  const CliRun d = run({"fuse", "--rule", "dempster", "--bba", c, b, "--format", "csv", "--precision", "2"});
  EXPECT_EQ("expr,bits,mass\nt2,011,1.00\nconflict,,0.50\n", d.out);

  EXPECT_EQ(1, run({"fuse", "--rule", "dempster", "--bba", c}).code);
  const std::string dsm = write_temp("a.json", kDsmA);
  EXPECT_EQ(1, run({"fuse", "--rule", "dempster", "--bba", c, dsm}).code);
}

TEST(CliFuse, InputErrors) {
  const std::string bad = write_temp("bad.json", R"({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.9}]})");
  const CliRun r = run({"fuse", "--rule", "dsm", "--bba", bad});
  EXPECT_EQ(1, r.code);
  EXPECT_NE(r.err.find("deficit 0.1"), std::string::npos) << r.err;

  const std::string syntax = write_temp("syntax.json", R"({"n":2,"model":"dsm","masses":[{"expr":"t1|","mass":1}]})");
  const CliRun p = run({"fuse", "--rule", "dsm", "--bba", syntax});
  EXPECT_EQ(2, p.code);
  EXPECT_NE(p.err.find("offset 3"), std::string::npos) << p.err;

  const std::string three = write_temp("three.json", R"({"n":3,"model":"dsm","masses":[{"expr":"t1","mass":1}]})");
  EXPECT_EQ(1, run({"fuse", "--rule", "dsm", "--bba", write_temp("a.json", kDsmA), three}).code);
  EXPECT_EQ(1, run({"fuse", "--rule", "dsm", "--bba", "/nonexistent/file.json"}).code);
}

TEST(CliFuse, WarningsAndQuiet) {
  const std::string dup = write_temp(
      "dup.json", R"j({"n":2,"model":"dsm","masses":[{"expr":"t1","mass":0.5},{"expr":"t1&(t1|t2)","mass":0.5}]})j");
  EXPECT_NE(run({"fuse", "--rule", "dsm", "--bba", dup}).err.find("warning"), std::string::npos);
  EXPECT_TRUE(run({"-q", "fuse", "--rule", "dsm", "--bba", dup}).err.empty());
}

TEST(CliBeliefs, FusedTargets) {
  const std::string a = write_temp("a.json", kDsmA);
  const std::string b = write_temp("b.json", kDsmB);
  const CliRun r = run({"beliefs", "--bba", a, b, "--target", "t1", "--target", "t1|t2", "--target", "0", "--format",
                     "csv", "--precision", "2"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ("expr,bits,bel,pl\nt1,101,0.60,1.00\nt1|t2,111,1.00,1.00\n0,000,0.00,0.00\n", r.out);
}

TEST(CliBeliefs, AllAndLimits) {
  const std::string a = write_temp("a.json", kDsmA);
  const CliRun r = run({"beliefs", "--bba", a, "--all", "--format", "csv"});
  ASSERT_EQ(0, r.code);
  EXPECT_EQ(6u, lines(r.out).size());
  EXPECT_EQ(1, run({"beliefs", "--bba", a}).code);
  EXPECT_EQ(1, run({"beliefs", "--bba", a, "--all", "--target", "t1"}).code);
  const std::string five = write_temp("five.json", R"({"n":5,"model":"dsm","masses":[{"expr":"t5","mass":1}]})");
  EXPECT_EQ(4, run({"beliefs", "--bba", five, "--all"}).code);
}

TEST(CliBeliefs, DstSemantics) {
  const std::string c =
      write_temp("dc.json", R"({"n":2,"model":"dst","masses":[{"expr":"t1","mass":0.5},{"expr":"t1|t2","mass":0.5}]})");
  const CliRun r = run({"beliefs", "--bba", c, "--target", "t2", "--format", "csv", "--precision", "2"});
  ASSERT_EQ(0, r.code) << r.err;
  EXPECT_EQ("expr,bits,bel,pl\nt2,011,0.00,0.50\n", r.out);
  EXPECT_EQ(1, run({"beliefs", "--bba", c, "--target", "t1&t2"}).code);
  EXPECT_EQ(1, run({"beliefs", "--bba", c, c, "--target", "t1"}).code);
}

#ifdef DSMT_CLI_PATH
TEST(CliBinary, ByteIdenticalAcrossProcesses) {
  const auto dir = std::filesystem::temp_directory_path() / "dsmt_cli_test";
  std::filesystem::create_directories(dir);
  const std::string first = (dir / "gen1.txt").string();
  const std::string second = (dir / "gen2.txt").string();
  const std::string cmd = std::string("\"") + DSMT_CLI_PATH + "\" gen --n 4 > ";
  ASSERT_EQ(0, std::system((cmd + "\"" + first + "\"").c_str()));
  ASSERT_EQ(0, std::system((cmd + "\"" + second + "\"").c_str()));
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string a = slurp(first);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(second));
  EXPECT_EQ(run({"gen", "--n", "4"}).out, a);
}
#endif
