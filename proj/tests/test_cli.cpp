#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "staraut/cli.hpp"

using namespace staraut;

namespace {

struct Run {
  int code;
  std::string text;
  Json json;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  int code = cli::run(args, out);
  std::string text = out.str();
  return {code, text, Json::parse(text)};
}

std::string dump(const Json& j) { return j.dump(); }

const std::string kZ2 = R"({"cyclic_orders":[2]})";
const std::string kZ3 = R"({"cyclic_orders":[3]})";

std::string trivial_form(const FinAbGroup& G) { return dump(io::to_json(WeakQuadraticForm(G, RootTable(G.order())))); }

}  // namespace

TEST(CliQf, EnumerateCountsMatchLibrary) {
  auto r = run({"qf", "enumerate", "--group", kZ2});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["count"], 4);
  FinAbGroup G({2});
  Json forms = Json::array();
  for (const auto& q : enumerate_wqf(G)) forms.push_back(io::to_json(q));
  EXPECT_EQ(r.json["forms"], forms);
  for (int n = 2; n <= 6; ++n) {
    std::string g = R"({"cyclic_orders":[)" + std::to_string(n) + "]}";
    EXPECT_EQ(run({"qf", "enumerate", "--group", g, "--kind", "quadratic"}).json["count"], n % 2 ? n : 2 * n);
  }
  EXPECT_EQ(run({"qf", "enumerate", "--group", kZ3, "--kind", "wrqf"}).json["count"], enumerate_wrqf(FinAbGroup({3})).size());
  EXPECT_EQ(run({"qf", "enumerate", "--group", kZ3, "--kind", "wsqf"}).json["count"], enumerate_wsqf(FinAbGroup({3})).size());
}

TEST(CliQf, ClassifyMatchesLibrary) {
  FinAbGroup G({2, 2});
  auto r = run({"qf", "classify", "--group", dump(io::to_json(G))});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["orbits"], io::orbits_json(classify(enumerate_wqf(G)))["orbits"]);
  auto w = run({"qf", "classify", "--group", kZ3, "--kind", "wrqf"});
  EXPECT_EQ(w.json["count"], classify_wrqf(enumerate_wrqf(FinAbGroup({3}))).size());
}

TEST(CliQf, CheckTrivialForm) {
  auto r = run({"qf", "check", "--form", trivial_form(FinAbGroup({3}))});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json, (Json{{"weak_qform", true}, {"qform", true}}));
  auto s = run({"qf", "check", "--form", trivial_form(FinAbGroup({3})), "--symmetric-wrt", "[2]"});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(s.json["symmetric_wrt"].get<bool>());
}

TEST(CliQf, CheckReportsCounterexamples) {
  FinAbGroup G({3});
  RootTable t(3);
  t[1] = RootOfUnity::from_fraction(1, 5);
  auto r = run({"qf", "check", "--form", dump(io::to_json(WeakQuadraticForm(G, t)))});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.json["weak_qform"].get<bool>());
  EXPECT_EQ(r.json["counterexample"]["check"], "bilinear");

  // q(1) = i on Z_2 is a quadratic form, but not symmetric w.r.t. 1.
  FinAbGroup Z2({2});
  RootTable u(2);
  u[1] = RootOfUnity::from_fraction(1, 4);
  std::string f = dump(io::to_json(WeakQuadraticForm(Z2, u)));
  auto s = run({"qf", "check", "--form", f, "--symmetric-wrt", "[1]"});
  EXPECT_EQ(s.code, 1);
  EXPECT_TRUE(s.json["qform"].get<bool>());
  EXPECT_FALSE(s.json["symmetric_wrt"].get<bool>());
  EXPECT_EQ(s.json["counterexample"]["args"], Json::parse("[[0]]"));
}

TEST(CliQf, DecomposeMatchesLibrary) {
  FinAbGroup G({4});
  for (const auto& q : enumerate_wqf(G)) {
    auto r = run({"qf", "decompose", "--form", dump(io::to_json(q))});
    ASSERT_EQ(r.code, 0);
    auto d = decompose(q);
    EXPECT_EQ(r.json["qtilde"], io::to_json(d.qtilde));
    EXPECT_EQ(r.json["eta"], io::to_json(d.eta));
  }
}

TEST(CliCocycle, FromQformThenCheck) {
  FinAbGroup G({2});
  for (const auto& q : enumerate_qf(G)) {
    auto r = run({"cocycle", "from-qform", "--form", dump(io::to_json(q))});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.json["cocycle"], io::to_json(cocycle_from_qform(q)));
    auto c = run({"cocycle", "check", "--cocycle", dump(r.json["cocycle"])});
    EXPECT_EQ(c.code, 0);
    EXPECT_TRUE(c.json["abelian_3cocycle"].get<bool>());
    EXPECT_EQ(c.json["em_qform"], io::to_json(q));
  }
  auto c = AbelianCocycle3::trivial(G);
  c.psi.table[7] = RootOfUnity::from_fraction(1, 3);
  auto bad = run({"cocycle", "check", "--cocycle", dump(io::to_json(c))});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json["counterexample"]["check"], "pentagon");
}

TEST(CliRibbon, BuildPassesAllChecks) {
  FinAbGroup G({3});
  for (const auto& d : enumerate_wrqf(G)) {
    auto r = run({"ribbon", "build", "--datum", dump(io::to_json(d))});
    ASSERT_EQ(r.code, 0);
    for (const auto& [k, v] : r.json["checks"].items()) EXPECT_TRUE(v.get<bool>()) << k;
    EXPECT_EQ(r.json["structure"], io::to_json(build_from_wrqf(d)));
    EXPECT_EQ(run({"ribbon", "check", "--structure", dump(r.json["structure"])}).code, 0);
  }
}

TEST(CliRibbon, CheckFindsBrokenTwist) {
  auto s = build_from_wrqf(enumerate_wrqf(FinAbGroup({3})).front());
  s.theta[1] = RootOfUnity::from_fraction(1, 5);
  auto r = run({"ribbon", "check", "--structure", dump(io::to_json(s))});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json["counterexample"]["check"], "twist");
}

TEST(CliRibbon, EnumerateAndEquivalent) {
  auto r = run({"ribbon", "enumerate", "--group", kZ3, "--classes"});
  ASSERT_EQ(r.code, 0);
  auto ss = enumerate_structures(FinAbGroup({3}));
  EXPECT_EQ(r.json["count"], ss.size());
  EXPECT_EQ(r.json["classes"], Json(classify_structures(ss)));
  auto same = run({"ribbon", "equivalent", "--first", dump(r.json["structures"][0]), "--second",
                   dump(r.json["structures"][0])});
  EXPECT_EQ(same.code, 0);
  EXPECT_TRUE(same.json["equivalent"].get<bool>());
  const auto& classes = r.json["classes"];
  ASSERT_GE(classes.size(), 2u);
  auto diff = run({"ribbon", "equivalent", "--first", dump(r.json["structures"][classes[0][0].get<int>()]),
                   "--second", dump(r.json["structures"][classes[1][0].get<int>()])});
  EXPECT_EQ(diff.code, 0);
  EXPECT_FALSE(diff.json["equivalent"].get<bool>());
}

TEST(CliVerify, GvectChuProf) {
  auto g = run({"gvect", "verify", "--group", R"({"cyclic_orders":[2,2]})", "--seed", "1", "--max-dim", "2"});
  EXPECT_EQ(g.code, 0);
  auto c = run({"chu", "verify", "--seed", "5", "--max-dim", "3", "--trials", "10"});
  EXPECT_EQ(c.code, 0);
  for (const auto& [k, v] : c.json["checks"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  for (std::string cat : {"z2", "chain3", "three"}) {
    auto p = run({"prof", "demo", "--category", cat});
    EXPECT_EQ(p.code, 0) << cat;
    auto again = run({"prof", "demo", "--category", dump(p.json["category"])});
    EXPECT_EQ(again.text, p.text) << cat;
  }
}

TEST(CliErrors, UsageAndParseErrorsExitTwo) {
  std::vector<std::vector<std::string>> cases{
      {},
      {"qf"},
      {"qf", "enumerate"},
      {"qf", "enumerate", "--group", kZ2, "--kind", "cubic"},
      {"qf", "enumerate", "--group", "{"},
      {"qf", "enumerate", "--group", R"({"orders":[2]})"},
      {"qf", "enumerate", "--group", "@/nonexistent/file.json"},
      {"qf", "check", "--form", R"({"group":{"cyclic_orders":[2]},"values":[[[0],{"num":0,"den":1}]]})"},
      {"chu", "verify", "--max-dim", "9"},
      {"nope"},
  };
  for (const auto& args : cases) {
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << r.text;
    EXPECT_TRUE(r.json.contains("error"));
  }
  auto r = run({"qf", "enumerate", "--group", R"({"orders":[2]})"});
  EXPECT_NE(r.json["error"]["message"].get<std::string>().find("cyclic_orders"), std::string::npos);
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_TRUE(h.json.contains("help"));
}

TEST(CliErrors, InvalidDatumExitsOne) {
  FinAbGroup G({3});
  WRQFDatum d = enumerate_wrqf(G)[4];
  d.g0 = G.add(d.g0, 1);
  auto r = run({"ribbon", "build", "--datum", dump(io::to_json(d))});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json["counterexample"]["check"], "eta");
}

TEST(CliEnv, MaxGroupOrderOverride) {
  std::string g = R"({"cyclic_orders":[4]})";
  setenv("STARAUT_MAX_GROUP_ORDER", "3", 1);
  auto r = run({"qf", "enumerate", "--group", g});
  setenv("STARAUT_MAX_GROUP_ORDER", "17", 1);
  auto big = run({"qf", "enumerate", "--group", R"({"cyclic_orders":[17]})"});
  unsetenv("STARAUT_MAX_GROUP_ORDER");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json["error"]["type"], "bound");
  EXPECT_EQ(big.code, 0);
  EXPECT_EQ(big.json["count"], 17 * 17);
  EXPECT_EQ(run({"qf", "enumerate", "--group", R"({"cyclic_orders":[17]})"}).code, 2);
}

TEST(CliIo, FileInputAndOutput) {
  std::string in = ::testing::TempDir() + "staraut_group.json";
  std::string out = ::testing::TempDir() + "staraut_out.json";
  std::ofstream(in) << kZ3;
  auto r = run({"--output", out, "qf", "enumerate", "--group", "@" + in});
  EXPECT_EQ(r.code, 0);
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), r.text);
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST(CliDeterminism, RepeatedRunsAreByteIdentical) {
  std::string form = dump(io::to_json(enumerate_qf(FinAbGroup({4}))[3]));
  std::string datum = dump(io::to_json(enumerate_wrqf(FinAbGroup({3}))[4]));
  std::vector<std::vector<std::string>> cmds{
      {"qf", "enumerate", "--group", kZ3, "--kind", "wrqf"},
      {"qf", "classify", "--group", R"({"cyclic_orders":[2,2]})"},
      {"qf", "decompose", "--form", form},
      {"qf", "check", "--form", form, "--symmetric-wrt", "[2]"},
      {"cocycle", "from-qform", "--form", form},
      {"ribbon", "build", "--datum", datum},
      {"ribbon", "enumerate", "--group", kZ3, "--classes"},
      {"gvect", "verify", "--group", kZ3, "--seed", "4", "--max-dim", "1"},
      {"chu", "verify", "--seed", "9", "--trials", "5"},
      {"prof", "demo", "--category", "three"},
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.text, b.text) << c[0] << " " << c[1];
  }
}
