#include <gtest/gtest.h>

#include <random>

#include "staraut/serialize.hpp"

using namespace staraut;

namespace {

Json reparse(const Json& j) { return Json::parse(j.dump()); }

std::string parse_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Serialize, ScalarsAndMatrices) {
  auto z = RootOfUnity::from_fraction(3, 12);
  EXPECT_EQ(io::to_json(z), Json::parse(R"({"num":1,"den":4})"));
  EXPECT_EQ(io::root_from_json(reparse(io::to_json(z)), "z"), z);
  auto m = RationalMatrix::from_rows({{1, 0}, {0, 2}, {3, 4}});
  m(0, 1) = Rational(-1, 3);
  Json mj = io::to_json(m);
  EXPECT_EQ(mj["entries"][0][1], "-1/3");
  EXPECT_EQ(io::matrix_from_json(reparse(mj), "m"), m);
  EXPECT_EQ(io::matrix_from_json(Json::parse(R"({"rows":1,"cols":2,"entries":[[1,"1/2"]]})"), "m")(0, 1),
            Rational(1, 2));
}

TEST(Serialize, FormsAndData) {
  FinAbGroup G({2, 4});
  EXPECT_EQ(io::group_from_json(io::to_json(G), "g"), G);
  for (int g = 0; g < G.order(); ++g) EXPECT_EQ(io::element_from_json(G, io::element_json(G, g), "e"), g);
  EXPECT_EQ(io::element_from_json(G, Json::parse("[3, -1]"), "e"), G.index({1, 3}));
  for (const auto& q : enumerate_wqf(FinAbGroup({3}))) EXPECT_EQ(io::form_from_json(reparse(io::to_json(q)), "q"), q);
  for (const auto& d : enumerate_wrqf(FinAbGroup({2, 2}))) {
    auto back = io::wrqf_from_json(reparse(io::to_json(d)), "d");
    EXPECT_EQ(back, d);
  }
}

TEST(Serialize, CocyclesAndStructures) {
  for (const auto& s : enumerate_structures(FinAbGroup({4}))) {
    EXPECT_EQ(io::structure_from_json(reparse(io::to_json(s)), "s"), s);
    EXPECT_EQ(io::cocycle_from_json(reparse(io::to_json(s.cocycle())), "c"), s.cocycle());
  }
}

TEST(Serialize, ChuPairsAndCategories) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto p = random_valid_pair(rng, 1 + rng() % 3);
    EXPECT_EQ(io::chu_pair_from_json(reparse(io::to_json(p)), "p"), p);
  }
  for (const auto& c : {cyclic_group_category(2), chain_category(3), three_object_category()}) {
    Json j = io::to_json(c);
    auto back = io::category_from_json(reparse(j), "c");
    EXPECT_EQ(io::to_json(back), j);
    EXPECT_EQ(back.num_morphisms(), c.num_morphisms());
  }
}

TEST(Serialize, ErrorsNameTheField) {
  FinAbGroup G({3});
  EXPECT_NE(parse_message([] { io::group_from_json(Json::parse(R"({"cyclic_orders":[2,"x"]})"), "g"); })
                .find("g.cyclic_orders[1]"),
            std::string::npos);
  EXPECT_NE(parse_message([] { io::group_from_json(Json::parse(R"({"cyclic_orders":[64,128]})"), "g"); }).find("exceeds"),
            std::string::npos);
  EXPECT_NE(parse_message([&] {
              io::form_from_json(
                  Json::parse(R"({"group":{"cyclic_orders":[3]},"values":[[[0],{"num":0,"den":1}],[[1],{"num":1}]]})"),
                  "q");
            }).find("q.values[1][1].den"),
            std::string::npos);
  EXPECT_NE(parse_message([&] {
              io::form_from_json(
                  Json::parse(R"({"group":{"cyclic_orders":[2]},"values":[[[0],{"num":0,"den":1}],[[0],{"num":0,"den":1}]]})"),
                  "q");
            }).find("duplicate"),
            std::string::npos);
  EXPECT_NE(parse_message([&] { io::character_from_json(G, Json::parse(R"({"images":[{"num":1,"den":2}]})"), "eta"); })
                .find("eta.images"),
            std::string::npos);
  EXPECT_NE(parse_message([] {
              io::chu_pair_from_json(Json::parse(R"({"dimV":2,"dimW":1,"pairing":{"rows":1,"cols":1,"entries":[["1"]]}})"),
                                     "p");
            }).find("p.pairing"),
            std::string::npos);
  EXPECT_NE(parse_message([] {
              io::category_from_json(Json::parse(R"j({"objects":["a"],"homs":{"(a,b)":[]},"comp":[],"ids":{"a":"1"}})j"),
                                     "c");
            }).find("c.homs.(a,b)"),
            std::string::npos);
}
