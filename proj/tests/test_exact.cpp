#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "staraut/exact/rational_matrix.hpp"
#include "staraut/exact/root_of_unity.hpp"
#include "staraut/exact/zmod_solver.hpp"

using namespace staraut;

namespace {

RootOfUnity ru(std::int64_t a, std::int64_t n) { return RootOfUnity::from_fraction(a, n); }

}  // namespace

TEST(RootOfUnity, Multiplication) {
  EXPECT_EQ(ru_mul(ru(1, 2), ru(1, 2)), RootOfUnity::one());
  EXPECT_EQ(ru_mul(ru(1, 4), ru(1, 4)), ru(1, 2));
  EXPECT_EQ(ru_mul(ru(1, 3), ru(1, 6)), ru(1, 2));
}

TEST(RootOfUnity, Powers) {
  EXPECT_EQ(ru_pow(ru(1, 4), 4), RootOfUnity::one());
  EXPECT_EQ(ru_pow(ru(1, 3), -1), ru(2, 3));
  EXPECT_EQ(ru_pow(ru(1, 8), 3), ru(3, 8));
}

TEST(RootOfUnity, PrincipalSqrt) {
  EXPECT_EQ(ru_principal_sqrt(RootOfUnity::one()), RootOfUnity::one());
  EXPECT_EQ(ru_principal_sqrt(ru(1, 2)), ru(1, 4));
  EXPECT_EQ(ru_principal_sqrt(ru(1, 3)), ru(1, 6));
}

TEST(RootOfUnity, StoredReduced) {
  RootOfUnity r = ru(6, 8);
  EXPECT_EQ(r.num(), 3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(ru(-1, 4), ru(3, 4));
  EXPECT_EQ(ru(5, 5).den(), 1);
  EXPECT_THROW(ru(1, 0), std::invalid_argument);
}

TEST(RootOfUnity, OrderSqrtProperties) {
  for (std::int64_t n = 1; n <= 30; ++n)
    for (std::int64_t a = 0; a < n; ++a) {
      RootOfUnity x = ru(a, n);
      EXPECT_TRUE(x.pow(x.order()).is_one());
      RootOfUnity s = x.principal_sqrt();
      EXPECT_EQ((2 * x.order()) % s.order(), 0);
      EXPECT_EQ(s * s, x);
    }
}

TEST(RationalMatrix, Examples) {
  EXPECT_TRUE(mat_kernel(RationalMatrix::identity(2)).empty());
  EXPECT_EQ(mat_rank(RationalMatrix::zero(3, 2)), 0u);
  auto a = RationalMatrix::from_rows({{1, 2}, {3, 4}});
  auto x = mat_solve(a, {1, 1});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], -1);
  EXPECT_EQ((*x)[1], 1);
}

TEST(RationalMatrix, InconsistentSystem) {
  auto a = RationalMatrix::from_rows({{1, 1}, {2, 2}});
  EXPECT_FALSE(mat_solve(a, {1, 3}).has_value());
  EXPECT_THROW(mat_solve(a, {1}), DimensionMismatch);
  EXPECT_THROW(a * RationalMatrix::identity(3), DimensionMismatch);
}

TEST(RationalMatrix, InverseKronDsum) {
  auto a = RationalMatrix::from_rows({{2, 1}, {1, 1}});
  auto inv = mat_inverse(a);
  ASSERT_TRUE(inv);
  EXPECT_EQ(a * *inv, RationalMatrix::identity(2));
  EXPECT_FALSE(mat_inverse(RationalMatrix::from_rows({{1, 2}, {2, 4}})));
  auto k = mat_kron(RationalMatrix::identity(2), a);
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(3, 2), 1);
  EXPECT_EQ(k(2, 2), 2);
  auto d = mat_dsum(a, RationalMatrix::identity(1));
  EXPECT_EQ(d(2, 2), 1);
  EXPECT_EQ(d(0, 2), 0);
}

TEST(RationalMatrix, StringRoundTrip) {
  EXPECT_EQ(rational_from_string("-6/4"), Rational(-3, 2));
  EXPECT_EQ(rational_to_string(Rational(-3, 2)), "-3/2");
  EXPECT_THROW(rational_from_string("1/0"), std::invalid_argument);
  EXPECT_THROW(rational_from_string("abc"), std::invalid_argument);
  EXPECT_THROW(rational_from_string(""), std::invalid_argument);
}

// rank + nullity = cols, kernel vectors annihilate, and the modular
// reduction at a random large prime agrees.
TEST(RationalMatrix, RankNullityAndModularCheck) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto a = oracle::random_matrix(rng, r, c);
    auto ker = mat_kernel(a);
    std::size_t rank = mat_rank(a);
    EXPECT_EQ(rank + ker.size(), c);
    for (const auto& v : ker) EXPECT_TRUE((a * RationalMatrix::column(v)).is_zero());
    std::int64_t p = oracle::pick_prime(trial);
    EXPECT_EQ(oracle::rank_mod(oracle::reduce(a, p), p), rank);
    std::vector<Rational> b(r);
    for (auto& x : b) x = Rational(static_cast<int>(rng() % 7) - 3);
    if (auto x = mat_solve(a, b)) {
      EXPECT_EQ(a * RationalMatrix::column(*x), RationalMatrix::column(b));
      EXPECT_TRUE(oracle::solves_mod(a, *x, b, p));
    }
  }
}

TEST(Congruences, MatchesBruteForceLexLeast) {
  std::mt19937_64 rng(11);
  const std::int64_t moduli[] = {2, 4, 6, 8, 9, 12, 18};
  int solvable = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::int64_t D = moduli[rng() % 7];
    int n = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 3);
    std::vector<CongruenceRow> rows(m);
    for (auto& row : rows) {
      for (int v = 0; v < n; ++v)
        if (rng() % 3) row.terms.emplace_back(v, static_cast<std::int64_t>(rng() % (2 * D)) - D);
      row.rhs = static_cast<std::int64_t>(rng() % D);
    }
    auto fast = solve_congruences(rows, n, D);
    auto slow = oracle::brute_congruences(rows, n, D);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << "trial " << trial;
    if (fast) {
      ++solvable;
      EXPECT_EQ(*fast, *slow) << "trial " << trial;
    }
  }
  EXPECT_GT(solvable, 50);
}

TEST(Congruences, TrivialModulus) {
  auto x = solve_congruences({{{{0, 3}}, 5}}, 2, 1);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<std::int64_t>{0, 0}));
}
