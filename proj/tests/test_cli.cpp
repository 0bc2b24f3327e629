#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdom/cli.hpp"

using namespace tdom;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(TDOM_SAMPLES_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Run, HandRing) {
  const auto o = cli({"run", "--labels", "3,1,4,5,9,2,6", "--ring", "7", "--alg", "choose-smallest", "--T", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto j = o.json();
  EXPECT_EQ(j["schema"], "tdom-report");
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["result"]["members"].get<std::vector<Label>>(), (std::vector<Label>{1, 2, 4}));
  EXPECT_TRUE(j["checks"]["dominating"]["ok"].get<bool>());
  EXPECT_TRUE(j["checks"]["size_ok"].get<bool>());
  EXPECT_EQ(j["checks"]["size_bound"], 6);
  EXPECT_TRUE(j["ok"].get<bool>());
}

TEST(Run, GraphFileAndConstantZeroFails) {
  const auto ok = cli({"run", "--graph", sample("petersen.graph"), "--alg", "choose-smallest", "--T", "1"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  const auto bad = cli({"run", "--graph", sample("ring7.graph"), "--alg", "constant-0", "--T", "2"});
  EXPECT_EQ(bad.code, kExitVerificationFailed);
  EXPECT_FALSE(bad.json()["checks"]["dominating"]["ok"].get<bool>());
}

TEST(Run, ConfigErrors) {
  EXPECT_EQ(cli({"run", "--ring", "2", "--T", "1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"run", "--ring", "5", "--alg", "greedy", "--T", "1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"run", "--ring", "5", "--labels", "1,2,3", "--T", "1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"run", "--ring", "5", "--T", "-1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"run", "--ring", "5", "--format", "xml"}).code, kExitConfigError);
  EXPECT_EQ(cli({"run", "--bogus"}).code, kExitConfigError);
  EXPECT_EQ(cli({}).code, kExitConfigError);
  const auto missing = cli({"run", "--graph", "/nonexistent/g.graph", "--T", "1"});
  EXPECT_EQ(missing.code, kExitConfigError);
}

TEST(Run, MalformedGraphNamesLine) {
  const auto o = cli({"run", "--graph", sample("malformed.graph"), "--T", "1"});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_NE(o.err.find("line 2"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
}

TEST(Verify, MembersAndWindow) {
  const auto ok = cli({"verify", "--ring", "9", "--T", "1", "--members", "2,5,8"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_EQ(ok.json()["set_size"], 3);
  EXPECT_TRUE(ok.json()["checks"]["window"]["ok"].get<bool>());
  const auto bad = cli({"verify", "--ring", "9", "--T", "1", "--members", "2,5"});
  EXPECT_EQ(bad.code, kExitVerificationFailed);
  EXPECT_FALSE(bad.json()["checks"]["window"]["ok"].get<bool>());
  EXPECT_EQ(cli({"verify", "--ring", "9", "--T", "1", "--members", "2,50"}).code, kExitConfigError);
}

TEST(Oracle, RingFormulaAndLimit) {
  const auto o = cli({"oracle", "--ring", "10", "--seed", "3", "--T", "2"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.json()["min_dominating_size"], 2);
  EXPECT_EQ(o.json()["ring_formula"], 2);
  EXPECT_EQ(cli({"oracle", "--ring", "40", "--T", "1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"oracle", "--graph", sample("petersen.graph"), "--T", "1"}).code, kExitOk);
}

TEST(Adversary, MessagesAndCertification) {
  const auto small = cli({"adversary", "--n", "144", "--T", "4", "--lambda", "7/5", "--alg", "choose-smallest"});
  EXPECT_EQ(small.code, kExitConfigError);
  EXPECT_NE(small.err.find("filler < 8T+4"), std::string::npos) << small.err;
  const auto big = cli({"adversary", "--n", "144", "--T", "4", "--lambda", "3/2"});
  EXPECT_EQ(big.code, kExitConfigError);
  EXPECT_NE(big.err.find("must be < 3/2"), std::string::npos);
  EXPECT_EQ(cli({"adversary", "--n", "144", "--T", "4", "--lambda", "7/x"}).code, kExitConfigError);
  const auto ref = cli({"adversary", "--n", "2448", "--T", "4", "--lambda", "7/5", "--alg", "choose-smallest"});
  ASSERT_EQ(ref.code, kExitOk) << ref.err;
  EXPECT_TRUE(ref.json()["report"]["certified"].get<bool>());
  const auto falsified = cli({"adversary", "--n", "120", "--T", "1", "--lambda", "1", "--alg", "constant-0"});
  EXPECT_EQ(falsified.code, kExitVerificationFailed);
  EXPECT_TRUE(falsified.json().contains("falsified"));
}

TEST(Colour, ClaimViolationCarriesCounterexample) {
  const auto o = cli({"colour", "--ring", "30", "--alg", "choose-smallest", "--scale-T", "2", "--scale-T-prime", "1"});
  EXPECT_EQ(o.code, kExitVerificationFailed);
  const auto j = o.json();
  ASSERT_TRUE(j.contains("claim3_counterexample"));
  EXPECT_TRUE(j["claim3_counterexample"]["exceeds"].get<bool>());
  const auto clean = cli({"colour", "--ring", "60", "--seed", "1", "--alg", "choose-smallest", "--scale-T", "4",
                          "--scale-T-prime", "2"});
  EXPECT_EQ(clean.code, kExitOk) << clean.out;
  const auto dot = cli({"colour", "--ring", "60", "--seed", "1", "--alg", "choose-smallest", "--scale-T", "4",
                        "--scale-T-prime", "2", "--dot"});
  EXPECT_EQ(dot.out.rfind("graph", 0), 0u);
  EXPECT_EQ(cli({"colour", "--ring", "30", "--scale-T", "1", "--scale-T-prime", "2"}).code, kExitConfigError);
  EXPECT_EQ(cli({"colour", "--ring", "30", "--x", "3/2", "--scale-T", "2", "--scale-T-prime", "1"}).code,
            kExitConfigError);
}

TEST(Sweep, EmptyGridPrintsHeaderOnly) {
  const auto o = cli({"sweep", "--alg", "choose-smallest"});
  EXPECT_EQ(o.code, kExitOk);
  const auto ls = lines(o.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("# {", 0), 0u);
  EXPECT_EQ(ls[1], "n,T,algorithm,set_size,bound,ratio");
}

TEST(Sweep, ChooseSmallestRowsWithinBound) {
  const auto o = cli({"sweep", "--alg", "choose-smallest", "--n-from", "10", "--n-to", "60", "--n-step", "10",
                      "--T-values", "1,2,4", "--seed", "5"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto ls = lines(o.out);
  ASSERT_EQ(ls.size(), 2u + 6u * 3u);
  for (std::size_t i = 2; i < ls.size(); ++i) {
    std::istringstream row(ls[i]);
    std::string n, T, alg, size, bound, ratio;
    std::getline(row, n, ',');
    std::getline(row, T, ',');
    std::getline(row, alg, ',');
    std::getline(row, size, ',');
    std::getline(row, bound, ',');
    std::getline(row, ratio, ',');
    EXPECT_EQ(alg, "choose-smallest");
    EXPECT_LE(std::stoll(size), std::max<long long>(1, std::stoll(n) - std::stoll(T) / 2)) << ls[i];
    EXPECT_GE(std::stoll(size), std::stoll(bound)) << ls[i];
    EXPECT_EQ(ratio.size(), ratio.find('.') + 5);
  }
  EXPECT_EQ(cli({"sweep", "--n-from", "1", "--n-to", "5", "--T-values", "1"}).code, kExitConfigError);
  EXPECT_EQ(cli({"sweep", "--n-from", "5", "--n-to", "9", "--n-step", "0", "--T-values", "1"}).code,
            kExitConfigError);
}

TEST(Determinism, ByteIdenticalReruns) {
  const std::vector<std::vector<std::string>> commands{
      {"run", "--ring", "200", "--seed", "11", "--alg", "ruling-set", "--T", "30", "-v"},
      {"oracle", "--ring", "12", "--seed", "2", "--T", "1"},
      {"colour", "--ring", "80", "--seed", "4", "--alg", "choose-smallest", "--scale-T", "3", "--scale-T-prime", "1"},
      {"sweep", "--alg", "ruling-set", "--n-from", "50", "--n-to", "150", "--n-step", "50", "--T-values", "20,40",
       "--seed", "9", "--format", "json"}};
  for (const auto& args : commands) {
    const auto a = cli(args);
    const auto b = cli(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args.front();
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Replay, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "tdom_cli_test";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"run", "--ring", "40", "--seed", "3", "--alg", "choose-smallest", "--T", "3"},
      {"verify", "--ring", "9", "--T", "1", "--members", "2,5"},
      {"adversary", "--n", "300", "--T", "2", "--lambda", "6/5", "--alg", "choose-smallest"},
      {"colour", "--ring", "30", "--alg", "choose-smallest", "--scale-T", "2", "--scale-T-prime", "1"}};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto first = cli(commands[i]);
    const auto path = (dir / ("report" + std::to_string(i) + ".json")).string();
    std::ofstream(path) << first.out;
    const auto again = cli({"replay", path});
    EXPECT_EQ(again.code, first.code) << commands[i].front();
    EXPECT_EQ(again.out, first.out) << commands[i].front();
    EXPECT_EQ(config_from_json(first.json()["config"]).command, commands[i].front());
  }
  EXPECT_EQ(cli({"replay", (dir / "absent.json").string()}).code, kExitConfigError);
  const auto junk = (dir / "junk.json").string();
  std::ofstream(junk) << "{ not json";
  EXPECT_EQ(cli({"replay", junk}).code, kExitConfigError);
}
