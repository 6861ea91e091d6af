#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "staraut/gvect.hpp"

using namespace staraut;

namespace {

GradedMap random_map(const GradedSpace& V, const GradedSpace& W, std::mt19937_64& rng, int degree = 0) {
  GradedMap f = GradedMap::zero(V, W, degree);
  for (auto& b : f.blocks) b = oracle::random_matrix(rng, b.rows(), b.cols());
  return f;
}

GradedSpace random_space(const FinAbGroup& G, std::mt19937_64& rng, int max_dim) {
  std::vector<int> d(G.order());
  for (auto& x : d) x = static_cast<int>(rng() % (max_dim + 1));
  return {G, d};
}

}  // namespace

TEST(Tensor, Examples) {
  FinAbGroup z4({4});
  EXPECT_EQ(tensor(GradedSpace::simple(z4, 1), GradedSpace::simple(z4, 2)), GradedSpace::simple(z4, 3));
  GradedSpace V(z4, {1, 0, 2, 3});
  EXPECT_EQ(tensor(V, GradedSpace::simple(z4, 0)), V);
  FinAbGroup z2({2});
  EXPECT_EQ(tensor(GradedSpace(z2, {2, 3}), GradedSpace(z2, {1, 1})).dims, (std::vector<int>{5, 5}));
  EXPECT_THROW(tensor(V, GradedSpace(z2, {1, 1})), GroupMismatch);
}

TEST(Tensor, MapIsFunctorial) {
  std::mt19937_64 rng(1);
  FinAbGroup G({2, 2});
  for (int t = 0; t < 20; ++t) {
    auto A = random_space(G, rng, 2), B = random_space(G, rng, 2), C = random_space(G, rng, 2);
    auto D = random_space(G, rng, 2), E = random_space(G, rng, 2), F = random_space(G, rng, 2);
    auto f1 = random_map(A, B, rng), f2 = random_map(B, C, rng);
    auto u1 = random_map(D, E, rng), u2 = random_map(E, F, rng);
    EXPECT_EQ(tensor_map(compose(f2, f1), compose(u2, u1)), compose(tensor_map(f2, u2), tensor_map(f1, u1)));
    EXPECT_EQ(tensor_map(GradedMap::identity(A), GradedMap::identity(D)), GradedMap::identity(tensor(A, D)));
  }
}

TEST(Dual, Examples) {
  FinAbGroup z2({2});
  EXPECT_EQ(dual_g0(GradedSpace(z2, {2, 3}), 1).dims, (std::vector<int>{3, 2}));
  FinAbGroup z5({5});
  for (int g = 0; g < 5; ++g)
    for (int g0 = 0; g0 < 5; ++g0)
      EXPECT_EQ(dual_g0(GradedSpace::simple(z5, g), g0), GradedSpace::simple(z5, z5.sub(g0, g)));
  GradedSpace V(z5, {1, 2, 0, 1, 3});
  EXPECT_EQ(dual_g0_map(GradedMap::identity(V), 3), GradedMap::identity(dual_g0(V, 3)));
}

TEST(Dual, ContravariantAndPreservesIsos) {
  std::mt19937_64 rng(2);
  FinAbGroup G({3});
  for (int t = 0; t < 30; ++t) {
    auto A = random_space(G, rng, 3), B = random_space(G, rng, 3), C = random_space(G, rng, 3);
    auto f = random_map(A, B, rng), h = random_map(B, C, rng);
    int g0 = static_cast<int>(rng() % 3);
    EXPECT_EQ(dual_g0_map(compose(h, f), g0), compose(dual_g0_map(f, g0), dual_g0_map(h, g0)));
    auto iso = random_map(A, A, rng);
    EXPECT_EQ(iso.is_iso(), dual_g0_map(iso, g0).is_iso());
  }
}

TEST(DoubleDual, Examples) {
  FinAbGroup z3({3});
  for (int g0 = 0; g0 < 3; ++g0) {
    auto d = double_dual_iso(GradedSpace::simple(z3, 0), g0);
    EXPECT_EQ(d.blocks[0], RationalMatrix::identity(1));
  }
  FinAbGroup z2({2});
  GradedSpace V(z2, {2, 3});
  auto d = double_dual_iso(V, 1);
  EXPECT_EQ(d.target.dims, (std::vector<int>{2, 3}));
  EXPECT_TRUE(d.is_iso());
}

TEST(DoubleDual, Natural) {
  std::mt19937_64 rng(4);
  FinAbGroup G({4});
  for (int t = 0; t < 20; ++t) {
    auto A = random_space(G, rng, 2), B = random_space(G, rng, 2);
    auto f = random_map(A, B, rng);
    int g0 = static_cast<int>(rng() % 4);
    auto ddf = dual_g0_map(dual_g0_map(f, g0), g0);
    EXPECT_EQ(compose(ddf, double_dual_iso(A, g0)), compose(double_dual_iso(B, g0), f));
  }
  FinAbGroup z2({2});
  GradedSpace A(z2, {1, 2}), B(z2, {2, 1});
  auto f = random_map(A, B, rng);
  EXPECT_EQ(compose(dual_g0_map(dual_g0_map(f, 1), 1), double_dual_iso(A, 1)), compose(double_dual_iso(B, 1), f));
}

TEST(DoubleDual, GeneralShiftDims) {
  FinAbGroup G({2, 3});
  GradedSpace V(G, {0, 1, 2, 3, 1, 2});
  for (int g0 = 0; g0 < 6; ++g0)
    for (int g1 = 0; g1 < 6; ++g1) EXPECT_EQ(dual_g0(dual_g0(V, g0), g1).dims, double_dual_dims(V, g0, g1));
}

TEST(InternalHom, Examples) {
  FinAbGroup z4({4});
  for (int h = 0; h < 4; ++h)
    for (int g = 0; g < 4; ++g)
      EXPECT_EQ(internal_hom(GradedSpace::simple(z4, h), GradedSpace::simple(z4, g)),
                GradedSpace::simple(z4, z4.sub(g, h)));
  GradedSpace V(z4, {1, 3, 0, 2});
  for (int g0 = 0; g0 < 4; ++g0)
    EXPECT_EQ(internal_hom(V, GradedSpace::simple(z4, g0)).dims, dual_g0(V, g0).dims);
}

TEST(InternalHom, CurryRoundTrips) {
  std::mt19937_64 rng(6);
  for (auto o : std::vector<std::vector<int>>{{4}, {2, 2}}) {
    FinAbGroup G(o);
    for (int t = 0; t < 25; ++t) {
      auto U = random_space(G, rng, 2), V = random_space(G, rng, 2), W = random_space(G, rng, 2);
      auto f = random_map(tensor(U, V), W, rng);
      auto ft = curry(f, U, V);
      EXPECT_EQ(uncurry(ft, V, W), f);
      auto g = random_map(U, internal_hom(V, W), rng);
      EXPECT_EQ(curry(uncurry(g, V, W), U, V), g);
    }
  }
}

TEST(InternalHom, CurryMatchesEvaluation) {
  // f~(x)(y) = f(x (x) y) on basis vectors, via the iHom coordinates.
  std::mt19937_64 rng(8);
  FinAbGroup G({3});
  GradedSpace U(G, {1, 2, 1}), V(G, {2, 0, 1}), W(G, {1, 2, 2});
  auto f = random_map(tensor(U, V), W, rng);
  auto ft = curry(f, U, V);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < U.dim(a); ++i) {
      GradedMap fx = ihom_element(V, W, a, ft.blocks[a].col(i));
      for (int h = 0; h < 3; ++h)
        for (int j = 0; j < V.dim(h); ++j) {
          int g = G.add(a, h);
          auto direct = f.blocks[g].col(tensor_offset(U, V, g, a) + i * V.dim(h) + j);
          EXPECT_EQ(apply_basis(fx, h, j), direct);
        }
    }
}

TEST(TensorG0, Examples) {
  FinAbGroup z3({3});
  GradedSpace V(z3, {1, 2, 0}), W(z3, {0, 1, 3});
  EXPECT_EQ(tensor_g0(V, W, 0), tensor(V, W));
  for (int g = 0; g < 3; ++g)
    for (int h = 0; h < 3; ++h)
      for (int g0 = 0; g0 < 3; ++g0)
        EXPECT_EQ(tensor_g0(GradedSpace::simple(z3, g), GradedSpace::simple(z3, h), g0),
                  GradedSpace::simple(z3, z3.sub(z3.add(g, h), g0)));
  FinAbGroup z2({2});
  GradedSpace S(z2, {1, 1});
  EXPECT_EQ(tensor_g0(S, S, 1).dims, (std::vector<int>{2, 2}));
}

TEST(StarAdjunction, Examples) {
  FinAbGroup z3({3});
  auto triv = star_adjunction_iso(GradedSpace::simple(z3, 0), GradedSpace::simple(z3, 0), 0);
  EXPECT_EQ(triv.forward.rows(), 1u);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g0 = 0; g0 < 3; ++g0) {
        auto s = star_adjunction_iso(GradedSpace::simple(z3, a), GradedSpace::simple(z3, b), g0);
        EXPECT_EQ(s.forward.cols() != 0, z3.add(a, b) == g0);
        EXPECT_EQ(s.forward.rows() != 0, a == z3.sub(g0, b));
      }
}

TEST(StarAdjunction, RoundTripAndNaturality) {
  std::mt19937_64 rng(10);
  FinAbGroup G({4});
  for (int t = 0; t < 30; ++t) {
    auto x = random_space(G, rng, 3), y = random_space(G, rng, 3), xp = random_space(G, rng, 3);
    int g0 = static_cast<int>(rng() % 4);
    auto s = star_adjunction_iso(x, y, g0);
    EXPECT_EQ(s.backward * s.forward, RationalMatrix::identity(s.forward.cols()));
    EXPECT_EQ(s.forward * s.backward, RationalMatrix::identity(s.forward.rows()));
    EXPECT_TRUE(star_adjunction_natural(random_map(xp, x, rng), y, g0));
  }
}

TEST(GradedMap, Validation) {
  FinAbGroup z2({2});
  GradedMap f = GradedMap::zero(GradedSpace(z2, {1, 2}), GradedSpace(z2, {2, 1}));
  EXPECT_NO_THROW(f.validate());
  f.blocks[0] = RationalMatrix::identity(3);
  EXPECT_THROW(f.validate(), DimensionMismatch);
  EXPECT_THROW(GradedSpace(z2, {1}), GroupMismatch);
}

TEST(VerifyGraded, AllSpacesEnumeration) {
  FinAbGroup G({2, 2});
  auto sp = all_graded_spaces(G, 2);
  EXPECT_EQ(sp.size(), 81u);
  EXPECT_EQ(sp.front().dims, (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(sp[1].dims, (std::vector<int>{0, 0, 0, 1}));
  EXPECT_EQ(sp.back().dims, (std::vector<int>{2, 2, 2, 2}));
  EXPECT_EQ(all_graded_spaces(FinAbGroup({3}), 0).size(), 1u);
}

TEST(VerifyGraded, ExhaustiveAndSampledRegimes) {
  for (const auto& ns : std::vector<std::vector<int>>{{2}, {3}, {2, 2}}) {
    auto r = verify_graded(FinAbGroup(ns), 2, 7);
    EXPECT_TRUE(r.all()) << (r.failures.empty() ? "" : r.failures.front());
  }
  auto sampled = verify_graded(FinAbGroup({4}), 2, 7, 16);
  EXPECT_TRUE(sampled.all());
  EXPECT_TRUE(sampled.failures.empty());
}
