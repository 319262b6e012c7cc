#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = chordext::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(CHORDEXT_FIXTURE_DIR) + "/" + name; }

const char* kZ2 = R"({"kind":"int_lattice","d":2})";

}  // namespace

TEST(Cli, ChordalCheck) {
  auto strip = run({"chordal-check", "--group", R"({"kind":"int_lattice","d":1})", "--set",
                    R"({"rule":"strip","morphism":[1],"bound":2})", "--radius", "4"});
  EXPECT_EQ(strip.code, 0) << strip.err;
  EXPECT_TRUE(json::parse(strip.out)["certificate"]["chordal"].get<bool>());

  auto minus = run({"chordal-check", "--group", fixture("z2_group.json"), "--set",
                    fixture("z2_minus_diagonal_set.json"), "--radius", "2"});
  EXPECT_EQ(minus.code, 1);
  auto cert = json::parse(minus.out)["certificate"];
  EXPECT_FALSE(cert["chordal"].get<bool>());
  EXPECT_EQ(cert["cycle"].size(), 4u);
  EXPECT_EQ(cert["cycle_elements"].size(), 4u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"chordal-check", "--group", "{bad", "--set", "{}"}).code, 2);
  EXPECT_EQ(run({"chordal-check", "--group", kZ2}).code, 2);
  EXPECT_EQ(run({"transmogrify"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"chordal-check", "--group", kZ2, "--set", R"({"rule":"nope"})"}).code, 2);
  EXPECT_EQ(run({"extend", "--data", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"extend", "--data", fixture("z_strip.json"), "--radius", "one"}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("chordal-check"), std::string::npos);
}

TEST(Cli, Extend) {
  auto ok = run({"extend", "--data", fixture("z_strip.json"), "--radius", "1,2", "--folner-sizes",
                 "2,4", "--targets", "[[1],[2]]", "--seed", "3"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  auto j = json::parse(ok.out);
  EXPECT_EQ(j["status"], "extended");
  EXPECT_EQ(j["report"]["cells"].size(), 4u);
  EXPECT_EQ(j["report"]["seed"], 3);

  auto neg = run({"extend", "--data", fixture("z2_counterexample.json"), "--radius", "2"});
  EXPECT_EQ(neg.code, 1);
  auto nj = json::parse(neg.out);
  EXPECT_EQ(nj["status"], "not_chordal");
  EXPECT_GE(nj["cycle"].size(), 4u);

  auto bad = run({"extend", "--data", fixture("not_psd_strip.json"), "--radius", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.out)["status"], "clique_not_psd");
}

TEST(Cli, Certify) {
  auto z2 = run({"certify", "--which", "z2"});
  ASSERT_EQ(z2.code, 0) << z2.err;
  EXPECT_NEAR(json::parse(z2.out)["contradiction"].get<double>(), 1.0, 1e-9);

  auto pauli = run({"certify", "--which", "cross"});
  ASSERT_EQ(pauli.code, 0);
  auto pj = json::parse(pauli.out);
  EXPECT_FALSE(pj["extendable"].get<bool>());
  EXPECT_NEAR(pj["forced_gap"].get<double>(), 2.0, 1e-9);

  auto commuting = run({"certify", "--which", "cross", "--unitaries",
                        "[[[1,0],[0,-1]],[[[0,1],0],[0,[0,-1]]]]"});
  ASSERT_EQ(commuting.code, 0) << commuting.err;
  EXPECT_TRUE(json::parse(commuting.out)["extendable"].get<bool>());

  EXPECT_EQ(run({"certify", "--which", "cross", "--unitaries", "[[[2,0],[0,1]],[[1,0],[0,1]]]"}).code, 2);
  EXPECT_EQ(run({"certify", "--which", "both"}).code, 2);
}

TEST(Cli, PolygonCycle) {
  auto c = run({"lulu-cycle", "--set", R"({"rule":"cross","m":1,"n":1})"});
  ASSERT_EQ(c.code, 0) << c.err;
  auto j = json::parse(c.out);
  EXPECT_TRUE(j["chordless_verified"].get<bool>());
  EXPECT_EQ(j["vertices"].size(), j["length"].get<std::size_t>());
  EXPECT_EQ(run({"lulu-cycle", "--set", "[[0,0],[1,1],[-1,-1]]"}).code, 2);
  EXPECT_EQ(run({"lulu-cycle", "--set", R"({"rule":"all"})"}).code, 2);
}

TEST(Cli, FolnerAndMoments) {
  auto f = run({"folner", "--group", kZ2, "--folner-sizes", "2,4,8,16"});
  ASSERT_EQ(f.code, 0);
  auto rows = json::parse(f.out)["rows"];
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(rows[i]["ratio"].get<double>(), 4.0 / (2 << i), 1e-15);
  auto fr = run({"folner", "--group", R"({"kind":"free_group","rank":2})"});
  ASSERT_EQ(fr.code, 0);
  EXPECT_EQ(json::parse(fr.out)["sets"], "ball");

  auto cf = run({"cf-decompose", "--moments", "[1, [0.5, 0.8660254037844386]]"});
  ASSERT_EQ(cf.code, 0) << cf.err;
  auto atoms = json::parse(cf.out)["atoms"];
  ASSERT_EQ(atoms.size(), 1u);
  EXPECT_NEAR(atoms[0]["frequency"].get<double>(), M_PI / 3, 1e-9);
  EXPECT_NEAR(atoms[0]["weight"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(run({"cf-decompose", "--moments", "[1, 2]"}).code, 1);
  EXPECT_EQ(run({"cf-decompose", "--moments", "[\"x\"]"}).code, 2);
}

TEST(Cli, CapsFromEnvironment) {
  ::setenv("CHORDAL_EXTEND_CAPS", "radius=2", 1);
  auto capped = run({"chordal-check", "--group", kZ2, "--set", R"({"rule":"cross","m":1,"n":1})",
                     "--radius", "3"});
  ::setenv("CHORDAL_EXTEND_CAPS", "radius=oops", 1);
  auto malformed = run({"chordal-check", "--group", kZ2, "--set", R"({"rule":"cross","m":1,"n":1})"});
  ::unsetenv("CHORDAL_EXTEND_CAPS");
  EXPECT_EQ(capped.code, 3);
  EXPECT_EQ(malformed.code, 2);
}

TEST(Cli, OutputIsDeterministicAndCanGoToAFile) {
  std::vector<std::string> args{"extend", "--data", fixture("dihedral_ball.json"), "--radius", "2",
                                "--folner-sizes", "2,4", "--seed", "11"};
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto path = std::filesystem::temp_directory_path() / "chordext_cli_test.json";
  args.push_back("--out");
  args.push_back(path.string());
  auto c = run(args);
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
  std::filesystem::remove(path);
}
