#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "netgen/formulation.hpp"
#include "netgen/solver.hpp"
#include "netgen/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netgen;

namespace {

const std::string kCli = NETGEN_CLI;
const fs::path kSpecs = fs::path(NETGEN_SOURCE_DIR) / "specs";

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("netgen_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Runs the CLI with stdout and stderr captured in dir; returns the exit code.
int run(const fs::path& dir, const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " > '" + (dir / "stdout.txt").string() + "' 2> '" +
                          (dir / "stderr.txt").string() + "'";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

std::string spec(const std::string& name) { return "'" + (kSpecs / name).string() + "'"; }

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, SolveTriangle) {
  auto d = fresh_dir("k3");
  ASSERT_EQ(run(d, "solve " + spec("k3.json") + " --out-dir '" + d.string() + "'"), 0) << slurp(d / "stderr.txt");
  const auto r = load_json(d / "report.json");
  EXPECT_EQ(r["status"], "optimal");
  ASSERT_EQ(r["graphs"].size(), 1u);
  EXPECT_TRUE(r["graphs"][0]["verification"]["pass"]);
  EXPECT_EQ(r["graphs"][0]["edges"].size(), 3u);
  EXPECT_TRUE(fs::exists(d / "graph.edgelist"));
  EXPECT_TRUE(fs::exists(d / "graph.dot"));
  EXPECT_EQ(run(d, "verify '" + (d / "graph.dot").string() + "' " + spec("k3.json")), 0);
}

TEST(Cli, UnattainableSequence) {
  auto d = fresh_dir("3311");
  EXPECT_EQ(run(d, "solve " + spec("degseq_3311.json") + " --out-dir '" + d.string() + "'"), 3);
  const auto r = load_json(d / "report.json");
  EXPECT_NEAR(r["total_slack"].get<double>(), 2.0, 1e-6);
  EXPECT_FALSE(r["slack_table"].empty());
  // The graph is still emitted and its deviation is confirmed independently.
  EXPECT_TRUE(r["graphs"][0]["verification"]["pass"]);
  EXPECT_FALSE(r["graphs"][0]["verification"]["spec_satisfied"]);
}

TEST(Cli, BadInput) {
  auto d = fresh_dir("bad");
  EXPECT_EQ(run(d, "solve '" + (d / "missing.json").string() + "'"), 2);
  put(d / "broken.json", "{\"n\": 4, ");
  EXPECT_EQ(run(d, "solve '" + (d / "broken.json").string() + "'"), 2);
  put(d / "neg.json", R"({"version":1,"n":3,"constraints":[{"kind":"degree_sequence","values":[2,2,-1]}]})");
  EXPECT_EQ(run(d, "solve '" + (d / "neg.json").string() + "'"), 2);
  EXPECT_EQ(run(d, "frobnicate"), 2);
  EXPECT_EQ(run(d, ""), 2);
}

TEST(Cli, VerifyExitCodes) {
  auto d = fresh_dir("verify");
  put(d / "tri.edgelist", "3\n1 2\n2 3\n1 3\n");
  put(d / "path.edgelist", "3\n1 2\n2 3\n");
  EXPECT_EQ(run(d, "verify '" + (d / "tri.edgelist").string() + "' " + spec("k3.json")), 0);
  EXPECT_EQ(run(d, "verify '" + (d / "path.edgelist").string() + "' " + spec("k3.json")), 1);
  put(d / "junk.edgelist", "3\n1 two\n");
  EXPECT_EQ(run(d, "verify '" + (d / "junk.edgelist").string() + "' " + spec("k3.json")), 2);
}

TEST(Cli, EnumerateAllFourNodeGraphs) {
  auto d = fresh_dir("enum");
  ASSERT_EQ(run(d, "enumerate " + spec("unconstrained_n4.json") + " -k 20 --format dot --out-dir '" + d.string() + "'"),
            0)
      << slurp(d / "stderr.txt");
  const auto j = load_json(d / "enumerate.json");
  EXPECT_EQ(j["found"], 11);
  EXPECT_TRUE(j["unattainable"] == false);
  ASSERT_EQ(j["files"].size(), 11u);
  std::set<std::string> keys;
  for (const auto& f : j["files"]) {
    const auto g = parse_graph(slurp(d / f.get<std::string>()));
    keys.insert(canonical_key(g));
  }
  EXPECT_EQ(keys.size(), 11u);
}

TEST(Cli, EnumerateStopsAtK) {
  auto d = fresh_dir("enum3");
  ASSERT_EQ(run(d, "enumerate " + spec("unconstrained_n4.json") + " -k 3 --out-dir '" + d.string() + "'"), 0);
  EXPECT_EQ(load_json(d / "enumerate.json")["found"], 3);
  EXPECT_TRUE(fs::exists(d / "graph_003.edgelist"));
  EXPECT_FALSE(fs::exists(d / "graph_004.edgelist"));
}

TEST(Cli, Oracle) {
  auto d = fresh_dir("oracle");
  ASSERT_EQ(run(d, "oracle " + spec("unconstrained_n4.json") + " --out-dir '" + d.string() + "'"), 0);
  const auto j = load_json(d / "oracle.json");
  EXPECT_EQ(j["labeled_feasible_count"], 64);
  EXPECT_EQ(j["feasible_class_count"], 11);
  put(d / "n7.json", R"({"version":1,"n":7,"constraints":[]})");
  EXPECT_EQ(run(d, "oracle '" + (d / "n7.json").string() + "'"), 2);
}

TEST(Cli, ExportIsDeterministic) {
  auto d = fresh_dir("export");
  const auto a = d / "a.lp", b = d / "b.lp";
  ASSERT_EQ(run(d, "export " + spec("case1_medium.json") + " -o '" + a.string() + "'"), 0);
  ASSERT_EQ(run(d, "export " + spec("case1_medium.json") + " -o '" + b.string() + "'"), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a.string() + ".json"), slurp(b.string() + ".json"));
  const auto side = load_json(a.string() + ".json");
  EXPECT_EQ(side["format"], "netgen-lp-sidecar");
  const auto form = build(parse_spec(slurp(kSpecs / "case1_medium.json")));
  EXPECT_EQ(side["variables"], form.model.num_variables());
  EXPECT_EQ(side["constraints"], form.model.num_constraints());
}

TEST(Cli, ExportStartBlocksSatisfyTheSpec) {
  auto d = fresh_dir("start");
  const auto lp = d / "m.lp";
  ASSERT_EQ(run(d, "export " + spec("case1_high.json") + " -o '" + lp.string() + "' --start"), 0);
  const auto spec_obj = parse_spec(slurp(kSpecs / "case1_high.json"));
  std::istringstream in(slurp(lp.string() + ".start"));
  std::string line;
  std::vector<Graph> blocks(1, Graph(spec_obj.n));
  int lines = 0;
  while (std::getline(in, line)) {
    if (line.empty()) {
      blocks.emplace_back(spec_obj.n);
      continue;
    }
    int i = 0, j = 0, v = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "x_%d_%d %d", &i, &j, &v), 3) << line;
    if (v) blocks.back().add_edge(i, j);
    ++lines;
  }
  EXPECT_EQ(lines, static_cast<int>(blocks.size()) * 45);
  for (const auto& g : blocks) EXPECT_TRUE(check_spec(g, spec_obj, 1e-9).pass);
}

TEST(Cli, ImportRoundTrip) {
  auto d = fresh_dir("import");
  const auto lp = d / "m.lp";
  ASSERT_EQ(run(d, "export " + spec("k3.json") + " -o '" + lp.string() + "'"), 0);

  // Stand-in for an external solver: the embedded one, written as name/value lines.
  const auto form = build(parse_spec(slurp(kSpecs / "k3.json")));
  const auto r = solve(form, SolveOptions{});
  ASSERT_EQ(r.status, SolveStatus::optimal);
  std::string good, bad;
  for (const auto& [name, v] : r.assignment) {
    good += name + " " + std::to_string(v) + "\n";
    bad += name + " " + std::to_string(name == "x_1_2" ? 1.0 - v : v) + "\n";
  }
  put(d / "good.sol", good);
  put(d / "bad.sol", bad);
  const auto side = "'" + lp.string() + ".json' ";
  EXPECT_EQ(run(d, "import " + side + "'" + (d / "good.sol").string() + "' --out-dir '" + d.string() + "'"), 0)
      << slurp(d / "stderr.txt");
  EXPECT_TRUE(load_json(d / "report.json")["graphs"][0]["verification"]["pass"]);
  // A solution that breaks a model row is a failed verification, not bad input.
  EXPECT_EQ(run(d, "import " + side + "'" + (d / "bad.sol").string() + "'"), 1);
  EXPECT_NE(slurp(d / "stderr.txt").find("violates"), std::string::npos);
}

TEST(Cli, SeedlessDeterministicRepeats) {
  auto d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  const auto s = spec("case1_low.json");
  ASSERT_EQ(run(d1, "solve " + s + " --seedless-deterministic --out-dir '" + d1.string() + "'"), 0);
  ASSERT_EQ(run(d2, "solve " + s + " --seedless-deterministic --out-dir '" + d2.string() + "'"), 0);
  EXPECT_EQ(slurp(d1 / "graph.edgelist"), slurp(d2 / "graph.edgelist"));
  EXPECT_EQ(load_json(d1 / "report.json")["stats"], load_json(d2 / "report.json")["stats"]);
}
