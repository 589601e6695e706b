#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcsp/cli.hpp"

using namespace qcsp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) {
  return std::string(QCSP_DATA_DIR) + "/" + name;
}

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Solve) {
  auto r = run({"solve", data("phi1.qcsp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "true\n");

  r = run({"solve", data("phi3.qcsp"), "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["truth"], true);
}

TEST(Cli, Outcomes) {
  auto r = run({"outcomes", data("phi2.qcsp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(1,3,4)\n(1,4,5)\n(2,3,5)\n(2,4,6)\n");

  r = run({"outcomes", data("phi2.qcsp"), "--engine", "strategies", "--limit", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("(1,3,4)\n... 3 more", 0), 0u) << r.out;

  r = run({"outcomes", data("phi3.qcsp"), "--member", "8,4,7,1,10"});
  EXPECT_EQ(r.out, "true\n");
  r = run({"outcomes", data("phi3.qcsp"), "--member", "6,6,6,6,6"});
  EXPECT_EQ(r.out, "false\n");
}

TEST(Cli, CheckPrintsWitness) {
  auto r = run({"check", data("phi1.qcsp"), "--family", "classical", "--kind",
                "inconsistent", "--var", "x1", "--val", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fails"), std::string::npos);
  EXPECT_NE(r.out.find("witness: (3,3,6)"), std::string::npos) << r.out;

  r = run({"check", data("phi2.qcsp"), "--family", "deep", "--kind",
           "dependent", "--var", "x3", "--set", "x1,x2", "--json"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"]["holds"], true);
  EXPECT_EQ(doc["verdict"]["witness"], nullptr);
}

TEST(Cli, Simplify) {
  auto r = run({"simplify", data("phi1.qcsp"), "--verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("var x1 exists {2}"), std::string::npos) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::size_t steps = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] != '{') continue;
    const auto step = nlohmann::json::parse(line);
    EXPECT_EQ(step["truth_before"], step["truth_after"]);
    ++steps;
  }
  EXPECT_GT(steps, 0u);
}

TEST(Cli, LocalTableAndPrune) {
  auto r = run({"local", data("phi4.qcsp"), "--kind", "inconsistent", "--var",
                "x", "--val", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("c3          holds"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("combined (any-constraint): holds"), std::string::npos);

  r = run({"local", data("phi4.qcsp"), "--prune"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("var x exists {2}"), std::string::npos) << r.out;
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"outcomes", data("phi1.qcsp"), "--engine", "magic"}).code, 2);

  auto r = run({"local", data("phi4.qcsp"), "--kind", "removable", "--var", "x",
                "--val", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("removab"), std::string::npos) << r.err;

  r = run({"check", data("phi1.qcsp"), "--kind", "fixable", "--var", "x9",
           "--val", "1"});
  EXPECT_EQ(r.code, 2);

  r = run({"solve", "/nonexistent.qcsp"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);

  r = run({"outcomes", data("phi3.qcsp"), "--max-tuples", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("above the limit"), std::string::npos) << r.err;
}

TEST(Cli, ParseErrorLocation) {
  const std::string path = ::testing::TempDir() + "bad.qcsp";
  {
    std::ofstream f(path);
    f << "qcsp\nvar x exists 5..3\n";
  }
  const auto r = run({"solve", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind(path + ":2:14:", 0), 0u) << r.err;
}

TEST(Cli, ExpectTrue) {
  const std::string path = ::testing::TempDir() + "false.qcsp";
  {
    std::ofstream f(path);
    f << "qcsp\nvar x exists 0..1\nvar y forall 0..1\nconstraint expr x = y\n";
  }
  EXPECT_EQ(run({"solve", path}).code, 0);
  EXPECT_EQ(run({"solve", path, "--expect-true"}).code, 1);
}

TEST(Cli, ValidateSmallRun) {
  const auto r = run({"validate", "--count", "10", "--seed", "3", "--json"});
  const auto doc = nlohmann::json::parse(r.out)["report"];
  EXPECT_EQ(doc["instances"], 15);
  EXPECT_EQ(r.code, doc["ok"] == true ? 0 : 1);
  EXPECT_EQ(doc["tallies"].size(), 12u);
}
