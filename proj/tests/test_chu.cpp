#include <gtest/gtest.h>

#include <random>

#include "staraut/chu.hpp"

using namespace staraut;

namespace {

ChuPair id_pair(std::size_t n) { return ChuPair(RationalMatrix::identity(n)); }

}  // namespace

TEST(ChuValid, Examples) {
  EXPECT_TRUE(is_valid(id_pair(2)));
  EXPECT_TRUE(is_valid(ChuPair::unit()));
  EXPECT_FALSE(is_valid(ChuPair(RationalMatrix::from_rows({{1, 0}, {0, 0}}))));
  auto tall = ChuPair(RationalMatrix::from_rows({{1, 0}, {0, 0}, {0, 1}}));
  EXPECT_FALSE(is_separated(tall));
  EXPECT_TRUE(is_extensional(tall));
  EXPECT_FALSE(is_valid(tall));
  EXPECT_THROW(internal_hom(tall, id_pair(1)), InvariantViolation);
}

TEST(ChuDual, Examples) {
  EXPECT_EQ(dual(ChuPair::unit()), ChuPair::unit());
  std::mt19937_64 rng(1);
  auto p = ChuPair(RationalMatrix::from_rows({{1, 2}, {0, 1}, {3, 0}}));
  EXPECT_EQ(dual(dual(p)), p);
  EXPECT_EQ(dual(p).dim_v, 2u);
  for (int t = 0; t < 20; ++t) {
    auto a = random_valid_pair(rng, 1 + rng() % 3), b = random_valid_pair(rng, 1 + rng() % 3);
    auto m = random_morphism(rng, a, b);
    EXPECT_TRUE(is_morphism(a, b, m));
    EXPECT_TRUE(is_morphism(dual(b), dual(a), dual_morphism(m)));
    ChuMorphism broken = m;
    broken.g(0, 0) += 1;
    EXPECT_FALSE(is_morphism(a, b, broken));
    EXPECT_FALSE(is_morphism(dual(b), dual(a), dual_morphism(broken)));
    EXPECT_EQ(dual_morphism(dual_morphism(m)), m);
  }
}

TEST(ChuHom, Examples) {
  EXPECT_EQ(hom_space(ChuPair::unit(), ChuPair::unit()).dim(), 1u);
  EXPECT_EQ(hom_space(id_pair(2), id_pair(2)).dim(), 4u);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_EQ(hom_space(id_pair(n), ChuPair::unit()).dim(), n);
  // A degenerate source constrains f.
  auto deg = ChuPair(RationalMatrix::from_rows({{1, 0}, {0, 0}}));
  EXPECT_EQ(hom_space(deg, ChuPair::unit()).dim(), 2u);  // f = (x, 0), g free
}

TEST(ChuHom, BasisIsMorphismsAndSpans) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto a = random_valid_pair(rng, 1 + rng() % 3), b = random_valid_pair(rng, 1 + rng() % 3);
    auto h = hom_space(a, b);
    EXPECT_EQ(h.dim(), a.dim_v * b.dim_v);
    for (const auto& m : h.basis) EXPECT_TRUE(is_morphism(a, b, m));
    auto m = random_morphism(rng, a, b);
    auto x = h.coords(m.f);
    ASSERT_TRUE(x);
    EXPECT_EQ(h.element(*x), m);
  }
}

TEST(ChuInternalHom, Examples) {
  auto p = id_pair(2);
  auto ih = internal_hom(p, p);
  EXPECT_EQ(ih.dim_v, 4u);
  EXPECT_EQ(ih.dim_w, 4u);
  EXPECT_EQ(mat_rank(ih.pairing), 4u);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto q = random_valid_pair(rng, 1 + rng() % 3);
    auto left = internal_hom(ChuPair::unit(), q);
    EXPECT_EQ(left.dim_v, q.dim_v);
    EXPECT_EQ(mat_rank(left.pairing), mat_rank(q.pairing));
    EXPECT_TRUE(certify_iso(left, q, unit_hom_map(q)));
    EXPECT_TRUE(certify_iso(dual(q), internal_hom(q, ChuPair::unit()), dual_as_hom_map(q)));
  }
}

TEST(ChuInternalHom, Functorial) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto p1 = random_valid_pair(rng, 2), p2 = random_valid_pair(rng, 2);
    auto q1 = random_valid_pair(rng, 2), q2 = random_valid_pair(rng, 3);
    auto m1 = random_morphism(rng, q1, p1), m2 = random_morphism(rng, p2, q2);
    auto im = internal_hom_map(p1, p2, q1, q2, m1, m2);
    EXPECT_TRUE(is_morphism(internal_hom(p1, p2), internal_hom(q1, q2), im));
  }
}

TEST(ChuTensor, Examples) {
  auto p = id_pair(2);
  EXPECT_EQ(tensor(p, p).dim_v, 4u);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto a = random_valid_pair(rng, 1 + rng() % 3), b = random_valid_pair(rng, 1 + rng() % 3);
    EXPECT_TRUE(certify_iso(tensor(ChuPair::unit(), a), a, RationalMatrix::identity(a.dim_v)));
    auto ab = tensor(a, b), ba = tensor(b, a);
    EXPECT_EQ(ab.dim_v, ba.dim_v);
    auto s = certify_iso(ab, ba, swap_map(a.dim_v, b.dim_v));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->f * swap_map(b.dim_v, a.dim_v), RationalMatrix::identity(ab.dim_v));
  }
}

TEST(ChuCertify, RejectsNonIsos) {
  auto p = id_pair(2);
  EXPECT_FALSE(certify_iso(p, p, RationalMatrix::from_rows({{1, 1}, {1, 1}})));
  EXPECT_FALSE(certify_iso(p, id_pair(3), RationalMatrix::identity(2)));
}

TEST(ChuIdentities, UnitPairs) {
  auto k = ChuPair::unit();
  auto r = verify_identities(k, k, k);
  EXPECT_TRUE(r.all());
  EXPECT_TRUE(r.failures.empty());
}

TEST(ChuIdentities, IdentityPairings) { EXPECT_TRUE(verify_identities(id_pair(2), id_pair(2), id_pair(2)).all()); }

TEST(ChuIdentities, SeededRandomPairs) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 12; ++t) {
    auto u = random_valid_pair(rng, 1 + rng() % 3), v = random_valid_pair(rng, 1 + rng() % 3);
    auto w = random_valid_pair(rng, 1 + rng() % 3);
    auto r = verify_identities(u, v, w, t);
    EXPECT_TRUE(r.all()) << (r.failures.empty() ? "" : r.failures.front());
  }
}
