#include <gtest/gtest.h>

#include <random>

#include "staraut/cohomology.hpp"

using namespace staraut;

namespace {

RootOfUnity ru(std::int64_t a, std::int64_t n) { return RootOfUnity::from_fraction(a, n); }

Cochain random_normalized(const FinAbGroup& G, int arity, std::mt19937_64& rng, std::int64_t den) {
  Cochain c = Cochain::trivial(G, arity);
  for (std::size_t i = 0; i < c.table.size(); ++i) {
    auto a = c.args(i);
    bool zero = false;
    for (int x : a) zero = zero || x == 0;
    if (!zero) c.table[i] = ru(static_cast<std::int64_t>(rng() % den), den);
  }
  return c;
}

/// Calls f on every normalized k-cochain with values in mu_den.
template <class F>
void for_each_normalized(const FinAbGroup& G, int arity, std::int64_t den, F f) {
  Cochain c = Cochain::trivial(G, arity);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < c.table.size(); ++i) {
    auto a = c.args(i);
    bool zero = false;
    for (int x : a) zero = zero || x == 0;
    if (!zero) free.push_back(i);
  }
  std::vector<std::int64_t> e(free.size(), 0);
  while (true) {
    for (std::size_t j = 0; j < free.size(); ++j) c.table[free[j]] = ru(e[j], den);
    f(c);
    int j = static_cast<int>(free.size()) - 1;
    while (j >= 0 && ++e[j] == den) e[j--] = 0;
    if (j < 0) break;
  }
}

Cochain bilinear_omega(const FinAbGroup& G, const BiHom& b) { return {G, 2, b.table}; }

std::vector<FinAbGroup> groups_upto6() {
  std::vector<FinAbGroup> out;
  for (auto o : std::vector<std::vector<int>>{{2}, {3}, {4}, {5}, {6}, {2, 2}, {2, 3}}) out.emplace_back(o);
  return out;
}

}  // namespace

TEST(Coboundary, Examples) {
  FinAbGroup z2({2});
  EXPECT_TRUE(coboundary(Cochain::trivial(z2, 2)).is_trivial());
  Cochain k = Cochain::trivial(z2, 2);
  k.table[3] = ru(1, 2);
  Cochain dk = coboundary(k);
  EXPECT_TRUE(dk(1, 1, 1).is_one());
  EXPECT_TRUE(is_normalized(dk));
}

TEST(Coboundary, SquaresToZeroRandomZ4) {
  FinAbGroup z4({4});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Cochain c1 = random_normalized(z4, 1, rng, 32);
    EXPECT_TRUE(coboundary(coboundary(c1)).is_trivial());
    Cochain c2 = random_normalized(z4, 2, rng, 32);
    EXPECT_TRUE(coboundary(coboundary(c2)).is_trivial());
  }
}

TEST(Coboundary, SquaresToZeroExhaustive) {
  for (int n : {2, 3}) {
    FinAbGroup G({n});
    for_each_normalized(G, 1, 2 * n * n, [](const Cochain& c) { EXPECT_TRUE(coboundary(coboundary(c)).is_trivial()); });
    for_each_normalized(G, 2, 2 * n, [](const Cochain& c) { EXPECT_TRUE(coboundary(coboundary(c)).is_trivial()); });
  }
}

TEST(AbCoboundary, Examples) {
  FinAbGroup z3({3});
  Cochain sym = Cochain::trivial(z3, 2);
  sym.table[1 * 3 + 2] = ru(1, 3);
  sym.table[2 * 3 + 1] = ru(1, 3);
  EXPECT_TRUE(ab_coboundary(sym).omega.is_trivial());

  FinAbGroup z2({2});
  Cochain ki = Cochain::trivial(z2, 2);
  ki.table[3] = ru(1, 4);
  EXPECT_TRUE(ab_coboundary(ki).omega.is_trivial());

  FinAbGroup v4({2, 2});
  int e1 = v4.index(std::vector<int>{1, 0}), e2 = v4.index(std::vector<int>{0, 1});
  Cochain kv = Cochain::trivial(v4, 2);
  kv.table[e1 * 4 + e2] = ru(1, 2);
  auto c = ab_coboundary(kv);
  EXPECT_EQ(c.omega(e1, e2), ru(1, 2));
  EXPECT_EQ(c.omega(e2, e1), ru(1, 2));
  EXPECT_TRUE(is_abelian_3cocycle(c));
}

TEST(AbCoboundary, AlwaysCocycles) {
  std::mt19937_64 rng(5);
  for (const auto& G : groups_upto6())
    for (int t = 0; t < 10; ++t) {
      auto c = ab_coboundary(random_normalized(G, 2, rng, search_denominator(G)));
      EXPECT_TRUE(is_abelian_3cocycle(c));
      EXPECT_TRUE(em_qform(c) == WeakQuadraticForm::trivial(G));
    }
}

TEST(Cocycle, Examples) {
  FinAbGroup z3({3});
  EXPECT_TRUE(is_abelian_3cocycle(AbelianCocycle3::trivial(z3)));
  WeakQuadraticForm sq(z3, {RootOfUnity::one(), ru(1, 3), ru(1, 3)});
  // Omega(a, b) = omega^{ab}
  BiHom b{z3, RootTable(9)};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) b.table[x * 3 + y] = ru(x * y, 3);
  AbelianCocycle3 c{Cochain::trivial(z3, 3), bilinear_omega(z3, b)};
  EXPECT_TRUE(is_abelian_3cocycle(c));
  EXPECT_EQ(em_qform(c), sq);
  EXPECT_EQ(em_qform(AbelianCocycle3::trivial(z3)), WeakQuadraticForm::trivial(z3));
}

TEST(Cocycle, RejectsBrokenData) {
  FinAbGroup v4({2, 2});
  Cochain om = Cochain::trivial(v4, 2);
  om.table[1 * 4 + 2] = ru(1, 2);  // not bilinear: Omega(e, e') only
  om.table[1 * 4 + 3] = ru(1, 4);
  EXPECT_FALSE(check_hexagons(Cochain::trivial(v4, 3), om));
  Cochain psi = Cochain::trivial(FinAbGroup({2}), 3);
  psi.table[7] = ru(1, 3);
  EXPECT_FALSE(check_pentagon(psi) && check_hexagons(psi, Cochain::trivial(FinAbGroup({2}), 2)));
  Cochain unnorm = Cochain::trivial(FinAbGroup({2}), 2);
  unnorm.table[1] = ru(1, 2);
  EXPECT_FALSE(is_normalized(unnorm));
}

TEST(CocycleFromQform, Examples) {
  FinAbGroup z2({2});
  auto t = cocycle_from_qform(WeakQuadraticForm::trivial(z2));
  EXPECT_EQ(t, AbelianCocycle3::trivial(z2));

  auto c = cocycle_from_qform(WeakQuadraticForm(z2, {RootOfUnity::one(), ru(1, 4)}));
  EXPECT_EQ(c.omega(1, 1), ru(1, 4));
  EXPECT_TRUE(is_abelian_3cocycle(c));
  EXPECT_FALSE(c.psi.is_trivial());

  FinAbGroup z3({3});
  auto s = cocycle_from_qform(WeakQuadraticForm(z3, {RootOfUnity::one(), ru(1, 3), ru(1, 3)}));
  EXPECT_TRUE(s.psi.is_trivial());
  EXPECT_TRUE(is_bihomomorphism(BiHom{z3, s.omega.table}));

  EXPECT_THROW(cocycle_from_qform(WeakQuadraticForm::from_character(Character(z3, {ru(1, 3)}))),
               InvariantViolation);
}

TEST(CocycleFromQform, EmRoundTripUpToOrder6) {
  for (const auto& G : groups_upto6())
    for (const auto& q : enumerate_qf(G)) {
      auto c = cocycle_from_qform(q);
      EXPECT_TRUE(is_abelian_3cocycle(c));
      EXPECT_EQ(em_qform(c), q);
    }
}

TEST(CocycleFromQform, EmIsHomomorphism) {
  for (const auto& G : groups_upto6()) {
    auto qf = enumerate_qf(G);
    for (std::size_t i = 0; i < qf.size(); i += 3)
      for (std::size_t j = 0; j < qf.size(); j += 2) {
        auto c1 = cocycle_from_qform(qf[i]);
        auto c2 = cocycle_from_qform(qf[j]);
        EXPECT_EQ(em_qform(c1 * c2), em_qform(c1) * em_qform(c2));
      }
  }
}

TEST(Witness, Examples) {
  FinAbGroup z4({4});
  std::mt19937_64 rng(9);
  for (const auto& q : enumerate_qf(z4)) {
    auto c = cocycle_from_qform(q);
    auto self = cohomologous_witness(c, c);
    ASSERT_TRUE(self);
    EXPECT_TRUE(self->is_trivial());
    Cochain k0 = random_normalized(z4, 2, rng, search_denominator(z4));
    auto twisted = c * ab_coboundary(k0);
    auto w = cohomologous_witness(twisted, c);
    ASSERT_TRUE(w);
    EXPECT_EQ(twisted, c * ab_coboundary(*w));
  }
  EXPECT_THROW(cohomologous_witness(AbelianCocycle3::trivial(FinAbGroup({10})),
                                    AbelianCocycle3::trivial(FinAbGroup({10}))),
               BoundExceeded);
}

// A witness exists exactly when the Eilenberg-MacLane forms agree.
TEST(Witness, AgreesWithEmForm) {
  std::mt19937_64 rng(21);
  for (auto o : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
    FinAbGroup G(o);
    auto qf = enumerate_qf(G);
    std::vector<AbelianCocycle3> cs;
    for (const auto& q : qf)
      cs.push_back(cocycle_from_qform(q) * ab_coboundary(random_normalized(G, 2, rng, search_denominator(G))));
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j)
        EXPECT_EQ(cohomologous_witness(cs[i], cs[j]).has_value(), i == j) << G.to_string() << " " << i << " " << j;
  }
}
