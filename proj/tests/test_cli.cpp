#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "mepvcb/bipartite.hpp"
#include "mepvcb/verify.hpp"
#include "oracles.hpp"

using namespace mepvcb;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mepvcb-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveYesReportsValidCertificate) {
  const std::string file = write("yes.json", serialize(fx::inst(fx::two_path(3, 4), 1, 7, 4)));
  const Outcome r = run({"solve", file, "--json-out", "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("verdict: yes"), std::string::npos);
  EXPECT_NE(r.out.find("certificate: valid"), std::string::npos);
  const Json doc = Json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(doc["format_version"], cli::kFormatVersion);
  EXPECT_EQ(doc["verdict"], "yes");
  EXPECT_TRUE(doc["certificate"]["valid"].get<bool>());
}

TEST_F(Cli, SolveNoIsStillSuccess) {
  const std::string file = write("no.json", serialize(fx::inst(fx::two_path(3, 4), 1, 8, 4)));
  const Outcome r = run({"solve", file});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("verdict: no"), std::string::npos);
  EXPECT_NE(r.out.find("method: "), std::string::npos);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run({"solve", write("bad.json", "{\"kind\": \"mepvcb\", \"left\": 1")}).code, cli::kExitInput);
  EXPECT_EQ(run({"solve", path("missing.json")}).code, cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInput);
  const std::string file = write("ok.json", serialize(fx::inst(fx::two_path(1, 1), 1, 1, 1)));
  EXPECT_EQ(run({"solve", file, "--strategy", "guess"}).code, cli::kExitInput);
  EXPECT_EQ(run({"reduce", "embed-regular", file, file}).code, cli::kExitInput);
  EXPECT_EQ(run({"generate", "nonsense"}).code, cli::kExitInput);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(Cli, OracleCapExitCode) {
  const std::string file = write("k44.json", serialize(fx::inst(fx::complete(4, 4), 2, 7, 2)));
  const Outcome r = run({"solve", file, "--strategy", "oracle", "--oracle-cap", "4"});
  EXPECT_EQ(r.code, cli::kExitCap) << r.out << r.err;
}

TEST_F(Cli, SolveJsonIsDeterministic) {
  const std::string file = write("k33.json", serialize(fx::inst(fx::complete(3, 3, 2), 2, 9, 4)));
  const std::string a = path("a.json");
  const std::string b = path("b.json");
  ASSERT_EQ(run({"solve", file, "--json-out", a}).code, 0);
  ASSERT_EQ(run({"--json-out", b, "solve", file}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST_F(Cli, EnvironmentOverrides) {
  const std::string file = write("k44.json", serialize(fx::inst(fx::complete(4, 4), 2, 7, 2)));
  setenv("MEPVCB_ORACLE_CAP", "4", 1);
  const int code = run({"solve", file, "--strategy", "oracle"}).code;
  unsetenv("MEPVCB_ORACLE_CAP");
  EXPECT_EQ(code, cli::kExitCap);
}

TEST_F(Cli, GenerateTwoPathsRepeats) {
  const std::vector<std::string> base{"generate", "two-paths", "--n", "5", "--wmin", "1", "--wmax", "9", "--seed", "7"};
  auto args = base;
  args.insert(args.end(), {"--out", path("a.json")});
  ASSERT_EQ(run(args).code, 0);
  args = base;
  args.insert(args.end(), {"--out", path("b.json")});
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const MepvcbInstance inst = parse_instance(slurp(path("a.json")));
  const auto comps = two_path_components(inst.graph);
  ASSERT_TRUE(comps.has_value());
  EXPECT_EQ(comps->size(), 5u);
  for (const Edge& e : inst.graph.edges()) {
    EXPECT_GE(e.w, 1);
    EXPECT_LE(e.w, 9);
  }
  EXPECT_NE(run({"generate", "two-paths", "--n", "5", "--seed", "8"}).out, run(base).out);
}

TEST_F(Cli, GenerateRegularIsRegular) {
  for (int d = 0; d <= 4; ++d) {
    const Outcome r = run({"generate", "regular", "--n", "6", "--degree", std::to_string(d), "--seed", std::to_string(d)});
    ASSERT_EQ(r.code, 0) << r.err;
    const BipartiteGraph g = parse_instance(r.out).graph;
    for (int f = 0; f < g.vertex_count(); ++f) EXPECT_EQ(g.degree(g.vertex_at(f)), d);
  }
}

TEST_F(Cli, GenerateBkpGap) {
  for (int seed = 1; seed <= 20; ++seed) {
    const Outcome r = run({"generate", "bkp", "--gap", "--n", "6", "--seed", std::to_string(seed)});
    ASSERT_EQ(r.code, 0);
    const BkpInstance b = std::get<BkpInstance>(parse_any(r.out));
    EXPECT_TRUE(satisfies_gap(b));
  }
}

TEST_F(Cli, GeneratedFamiliesValidate) {
  for (const char* family : {"random-bipartite", "complete", "core-pendant", "subsetsum", "bkp"}) {
    const Outcome r = run({"generate", family, "--seed", "3"});
    ASSERT_EQ(r.code, 0) << family << r.err;
    EXPECT_NO_THROW(parse_any(r.out)) << family;
  }
}

TEST_F(Cli, ReduceWritesTargetAndReport) {
  const std::string src = write("p.json", serialize(fx::inst(fx::two_path(1, 1), 1, 2, 1)));
  const std::string dst = path("out.json");
  const Outcome r = run({"reduce", "embed-regular", src, dst, "--check"});
  ASSERT_EQ(r.code, 0) << r.err;
  const BipartiteGraph h = parse_instance(slurp(dst)).graph;
  for (int f = 0; f < h.vertex_count(); ++f) EXPECT_EQ(h.degree(h.vertex_at(f)), 2);
  const Json report = Json::parse(slurp(dst + ".report.json"));
  EXPECT_EQ(report["parameters"]["C"], 9);
  EXPECT_EQ(report["status"], "equivalent");
  EXPECT_EQ(report["budget"]["source"], report["budget"]["target"]);
}

TEST_F(Cli, ReducePreconditionError) {
  const BkpInstance b{{9, 9}, {6, 5}, 1, 9, 6, CardinalityMode::AtMostB};
  const std::string src = write("b.json", serialize(AnyInstance{b}));
  ASSERT_EQ(run({"reduce", "bkp-to-2paths", src, path("t.json")}).code, 0);
  const Outcome r = run({"reduce", "identify-into-tree", path("t.json"), path("tree.json")});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("gap"), std::string::npos);
}

TEST_F(Cli, ReduceChainRunsEveryStage) {
  const std::string src = write("s.json", serialize(AnyInstance{SubsetSumInstance{{1, 2, 3}, 5, 2}}));
  const Outcome r = run({"reduce", "subsetsum-to-2paths", src, path("t.json"), "--check"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json report = Json::parse(slurp(path("t.json.report.json")));
  for (const char* key : {"signed.B", "positive.Q1", "ordered.Q", "gap.T"}) {
    EXPECT_TRUE(report["parameters"].contains(key)) << key;
  }
  EXPECT_EQ(report["status"], "equivalent");
  EXPECT_TRUE(two_path_components(parse_instance(slurp(path("t.json"))).graph).has_value());
}

TEST_F(Cli, VerifyAllPasses) {
  const Outcome r = run({"verify", "all", "--count", "40", "--json-out", "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out;
  const Json doc = Json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(doc["results"].size(), reduction_catalog().size());
  for (const Json& entry : doc["results"]) {
    EXPECT_EQ(entry["mismatch"], 0);
    EXPECT_EQ(entry["unverified"], 0);
    EXPECT_EQ(entry["max_budget_growth"], 0);
  }
}

TEST_F(Cli, VerifyMutationLeavesWitness) {
  const std::string witness = path("w.json");
  const Outcome r = run({"verify", "bkp-shift-positive", "--mutate", "--witness", witness});
  ASSERT_EQ(r.code, cli::kExitMismatch);
  const AnyInstance src = parse_any(slurp(witness));
  const auto& b = std::get<BkpInstance>(src);
  const auto mutated = apply_reduction("bkp-shift-positive", src, true);
  EXPECT_NE(oracle::bkp_yes(b), oracle::bkp_yes(std::get<BkpInstance>(mutated.instance)));
}

TEST_F(Cli, VerifyOversizedIsUnverified) {
  const Outcome r = run({"verify", "embed-regular", "--count", "10", "--oracle-cap", "1", "--json-out", "-"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const Json doc = Json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(doc["results"][0]["unverified"], 10);
  const Outcome s = run({"verify", "embed-regular", "--count", "10", "--oracle-cap", "1", "--structured"});
  EXPECT_NE(s.out.find("10 equivalent"), std::string::npos) << s.out;
}

TEST_F(Cli, VerifyCorpusFilesAndWorkers) {
  const std::string a = write("a.json", serialize(fx::inst(fx::two_path(2, 5), 1, 7, 5)));
  const std::string b = write("b.json", serialize(fx::inst(fx::complete(2, 2), 1, 3, 1)));
  const Outcome r = run({"verify", "embed-complete", "--corpus", a, b, "--workers", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2 equivalent"), std::string::npos);
  const Outcome one = run({"verify", "link-cycle", "--count", "30", "--workers", "1", "--json-out", "-"});
  const Outcome four = run({"verify", "link-cycle", "--count", "30", "--workers", "4", "--json-out", "-"});
  EXPECT_EQ(one.out, four.out);
}

TEST_F(Cli, StatsCompleteBipartite) {
  const std::string file = write("k22.json", serialize(fx::inst(fx::complete(2, 2), 2, 3, 1)));
  const Outcome r = run({"stats", file, "--json-out", "-"});
  ASSERT_EQ(r.code, 0);
  const Json doc = Json::parse(r.out.substr(r.out.find('{')));
  const Json& s = doc["stats"];
  EXPECT_EQ(s["vertices"], 4);
  EXPECT_EQ(s["edges"], 4);
  EXPECT_EQ(s["max_degree"], 2);
  EXPECT_EQ(s["tau"], 2);
  EXPECT_EQ(s["nu"], 2);
  EXPECT_EQ(s["alpha"], 2);
  EXPECT_EQ(s["nu_ind"], 1);
  EXPECT_EQ(s["radius"], 2);
  EXPECT_EQ(s["diameter"], 2);
  EXPECT_EQ(s["disconnected"], false);
  EXPECT_EQ(doc["flags"]["k1_ge_tau"], true);
  EXPECT_EQ(doc["flags"]["k2_ge_k3_delta"], true);
}

TEST_F(Cli, StatsSingleEdgeAndForest) {
  const std::string single = write("e.json", serialize(fx::inst(fx::disjoint_edges({4}), 1, 1, 1)));
  const std::string text = run({"stats", single, "--json-out", "-"}).out;
  const Json one = Json::parse(text.substr(text.find('{')));
  EXPECT_EQ(one["stats"]["vertices"], 2);
  EXPECT_EQ(one["stats"]["diameter"], 1);
  EXPECT_EQ(one["stats"]["disconnected"], false);

  const Outcome g = run({"generate", "two-paths", "--n", "3"});
  const std::string forest = write("f.json", g.out);
  const Outcome r = run({"stats", forest});
  EXPECT_NE(r.out.find("disconnected: true"), std::string::npos) << r.out;
}
