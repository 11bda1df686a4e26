#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qrious/dfact.hpp"
#include "qrious/shape.hpp"

using namespace qrious;

namespace {

Poly from(const std::vector<long>& v) {
  std::vector<mpz_class> c(v.begin(), v.end());
  return Poly(std::move(c));
}

Poly random_palindrome(std::mt19937_64& rng, std::size_t deg, long hi) {
  std::uniform_int_distribution<long> d(0, hi);
  std::vector<long> c(deg + 1);
  for (std::size_t i = 0; i <= deg / 2; ++i) c[i] = c[deg - i] = d(rng);
  c[0] = c[deg] = 1 + d(rng);
  return from(c);
}

}  // namespace

TEST(Shape, B41Profile) {
  const Poly b41 = build(FactorialPair({8, 1}, {4, 3, 2}));
  EXPECT_TRUE(check_positive(b41).holds);
  EXPECT_TRUE(check_palindromic(b41).holds);
  const Verdict u = check_unimodal(b41);
  ASSERT_FALSE(u.holds);
  EXPECT_EQ(*u.first_violation, 9u);
  EXPECT_TRUE(check_parity_unimodal(b41).holds);
  EXPECT_TRUE(check_one_plus_q_unimodal(b41).holds);
}

TEST(Shape, Witnesses) {
  EXPECT_EQ(check_positive(Poly({1, -1, 1})), Verdict::fail(1));
  EXPECT_EQ(check_palindromic(Poly({1, 2, 3})), Verdict::fail(0));
  EXPECT_EQ(check_unimodal(Poly({1, 3, 2, 4})), Verdict::fail(2));
  EXPECT_EQ(check_unimodal(Poly({1, 1, 1})), Verdict::pass());
  // even chain 1,3,2,4 dips at even index 2*2=4
  EXPECT_EQ(check_parity_unimodal(Poly({1, 0, 3, 0, 2, 0, 4})).first_violation, std::optional<std::size_t>(4));
  EXPECT_TRUE(check_unimodal(Poly{}).holds);
}

TEST(Shape, InterleavingSmallCases) {
  EXPECT_TRUE(interleaving_condition(Poly({1, 1})));
  EXPECT_TRUE(interleaving_condition(Poly({1, 0, 1})));
  // 1 + 2q^2 + q^4: (1+q)P = 1,1,2,2,1,1 unimodal
  EXPECT_TRUE(interleaving_condition(Poly({1, 0, 2, 0, 1})));
  // (1+q)P = 2,3,3,2
  EXPECT_TRUE(interleaving_condition(Poly({2, 1, 2})));
  // (1+q)P = 3,3,1,1,3,3
  EXPECT_FALSE(interleaving_condition(Poly({3, 0, 1, 0, 3})));
}

TEST(Shape, InterleavingMatchesMultiplicationOnRandomPalindromes) {
  std::mt19937_64 rng(2024);
  int pos = 0, neg = 0;
  for (int t = 0; t < 10000; ++t) {
    const Poly p = random_palindrome(rng, rng() % 14, 1 + static_cast<long>(rng() % 6));
    const bool via_mul = oracle::unimodal(oracle::mul(p.coeffs(), {mpz_class(1), mpz_class(1)}));
    ASSERT_EQ(interleaving_condition(p), via_mul) << to_string(p);
    ASSERT_NO_THROW(check_one_plus_q_unimodal(p));
    (via_mul ? pos : neg)++;
  }
  EXPECT_GT(pos, 100);
  EXPECT_GT(neg, 100);
}

TEST(Shape, OddDegreeJunctionCase) {
  // odd degree, k = 5: both chains must rise up to index M = 3
  const Poly p = from({1, 1, 2, 2, 1, 1});
  EXPECT_TRUE(interleaving_condition(p));
  EXPECT_TRUE(check_one_plus_q_unimodal(p).holds);
}

TEST(Shape, ProductOfSymmetricUnimodalStaysUnimodal) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 500; ++t) {
    auto make = [&] {
      const std::size_t deg = rng() % 10;
      std::vector<long> c(deg + 1);
      long v = 1;
      for (std::size_t i = 0; i <= deg / 2; ++i) {
        v += static_cast<long>(rng() % 3);
        c[i] = c[deg - i] = v;
      }
      return from(c);
    };
    const Poly p = make() * make();
    ASSERT_TRUE(check_unimodal(p).holds) << to_string(p);
    ASSERT_TRUE(check_palindromic(p).holds);
  }
}

TEST(Shape, AnalyzeInvariantsOnRandomPalindromes) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(-3, 6);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t deg = rng() % 12;
    std::vector<long> c(deg + 1);
    for (std::size_t i = 0; i <= deg / 2; ++i) c[i] = c[deg - i] = d(rng);
    c[0] = c[deg] = 1;
    const Poly p = from(c);
    ShapeReport r;
    ASSERT_NO_THROW(r = analyze(p)) << to_string(p);
    if (r.one_plus_q_unimodal.holds) { ASSERT_TRUE(r.positive.holds); }
    if (r.unimodal.holds) { ASSERT_TRUE(r.parity_unimodal.holds); }
  }
}
