#include <gtest/gtest.h>

#include <array>
#include <map>

#include "common.hpp"
#include "tnorm/harness.hpp"

using namespace tnorm;

namespace {

TEST(FiniteField, QuadraticExtensionOverF2) {
  const auto t = test::tower(2);
  const ClosureElem w = t->generator(2);
  const ClosureElem w1 = t->add(w, t->one());
  EXPECT_EQ(ff_arith(*t, FieldOp::mul, w, w), w1);
  EXPECT_TRUE(ff_arith(*t, FieldOp::add, w, w).is_zero());
  EXPECT_EQ(ff_arith(*t, FieldOp::inv, w), w1);
  EXPECT_EQ(t->mul(w, w1), t->one());
  EXPECT_EQ(t->min_poly(2), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(t->to_fixture(w), "2^2:0,1");
}

TEST(FiniteField, Embeddings) {
  const auto t = test::tower(2);
  EXPECT_EQ(ff_embed(*t, t->one(), 2), t->one());
  const ClosureElem w4 = ff_embed(*t, t->generator(2), 4);
  EXPECT_EQ(w4.level, 4u);
  EXPECT_TRUE(t->add(t->add(t->mul(w4, w4), w4), t->one()).is_zero());
  EXPECT_THROW(ff_embed(*t, t->generator(2), 3), LatticeError);
  EXPECT_THROW(t->embed(t->one(), 5), LatticeError);
}

TEST(FiniteField, InverseOfZeroThrows) {
  const auto t = test::tower(3);
  EXPECT_THROW(t->inv(t->zero()), DivisionByZero);
  EXPECT_THROW(ff_arith(*t, FieldOp::inv, t->zero()), DivisionByZero);
}

TEST(FiniteField, FixtureCoordinatesRoundTrip) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = test::tower(p);
    for (std::uint32_t level : {1u, 2u, 3u, 4u}) {
      for (const auto& a : test::elements(*t, level)) {
        EXPECT_EQ(t->from_coords(level, t->coords_at(a, level)), a);
        EXPECT_EQ(t->from_enumeration_index(level, t->enumeration_index(a, level)), a);
      }
    }
  }
}

TEST(FiniteField, MinimalLevels) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = test::tower(p);
    std::map<std::uint32_t, std::uint64_t> exact;
    for (const auto& a : test::elements(*t, 4)) ++exact[t->minimal_level(a.raw)];
    EXPECT_EQ(exact[1], p);
    EXPECT_EQ(exact[2], p * p - p);
    EXPECT_EQ(exact[4], p * p * p * p - p * p);
  }
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, std::uint32_t>> {};

TEST_P(FieldAxioms, HoldExhaustively) {
  const auto [p, level] = GetParam();
  const auto t = test::tower(p);
  const auto xs = test::elements(*t, level);
  for (const auto& a : xs) {
    EXPECT_EQ(t->add(a, t->zero()), a);
    EXPECT_EQ(t->mul(a, t->one()), a);
    EXPECT_TRUE(t->add(a, t->neg(a)).is_zero());
    if (!a.is_zero()) {
      EXPECT_EQ(t->mul(a, t->inv(a)), t->one());
    }
    EXPECT_EQ(t->pow(a, t->field_order(level)), a);
    for (const auto& b : xs) {
      const auto s = t->add(a, b), m = t->mul(a, b);
      EXPECT_EQ(s, t->add(b, a));
      EXPECT_EQ(m, t->mul(b, a));
      EXPECT_TRUE(t->in_level(s.raw, level));
      EXPECT_TRUE(t->in_level(m.raw, level));
      if (xs.size() <= 16) {
        for (const auto& c : xs) {
          EXPECT_EQ(t->add(s, c), t->add(a, t->add(b, c)));
          EXPECT_EQ(t->mul(m, c), t->mul(a, t->mul(b, c)));
          EXPECT_EQ(t->mul(a, t->add(b, c)), t->add(m, t->mul(a, c)));
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallLevels, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{2u, 2u}, std::pair{2u, 3u},
                                           std::pair{2u, 4u}, std::pair{3u, 1u}, std::pair{3u, 2u},
                                           std::pair{3u, 3u}, std::pair{3u, 4u}));

TEST(FiniteField, EmbeddingsAreHomomorphismsAndCommute) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = test::tower(p);
    for (std::uint32_t m : {1u, 2u, 3u}) {
      for (std::uint32_t n : {2u, 4u, 6u, 12u}) {
        if (n % m != 0) continue;
        const auto xs = test::elements(*t, m);
        for (const auto& a : xs) {
          const auto ea = t->embed(a, n);
          EXPECT_EQ(ea, a);
          EXPECT_EQ(ea.level, n);
          for (const auto& b : xs) {
            EXPECT_EQ(t->embed(t->add(a, b), n), t->add(ea, t->embed(b, n)));
            EXPECT_EQ(t->embed(t->mul(a, b), n), t->mul(ea, t->embed(b, n)));
          }
          if (n % 2 == 0 && 12 % n == 0) {
            EXPECT_EQ(t->embed(t->embed(a, n), 12), t->embed(a, 12));
          }
        }
      }
    }
  }
}

TEST(FiniteField, GeneratorsRootTheirMinimalPolynomials) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = test::tower(p);
    for (std::uint32_t d : t->levels()) {
      const auto g = t->generator(d);
      const auto f = t->min_poly(d);
      ClosureElem acc = t->zero();
      for (std::size_t i = f.size(); i-- > 0;) acc = t->add(t->mul(acc, g), t->from_int(f[i]));
      EXPECT_TRUE(acc.is_zero()) << "p=" << p << " level=" << d;
      EXPECT_EQ(t->minimal_level(g.raw), d);
    }
  }
}

TEST(FiniteField, RandomIsDeterministicAndContained) {
  const auto t = test::tower(3);
  Rng a = Rng::for_trial(42, 3), b = Rng::for_trial(42, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = ff_random(*t, 1, a);
    EXPECT_EQ(x, ff_random(*t, 1, b));
    EXPECT_TRUE(t->in_level(x.raw, 1));
  }
}

TEST(FiniteField, RandomFrequenciesAreUniform) {
  const auto t = test::tower(2);
  Rng rng(12345);
  std::map<std::uint32_t, int> counts;
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[ff_random(*t, 2, rng).raw];
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [raw, c] : counts) {
    EXPECT_NEAR(static_cast<double>(c) / n, 0.25, 0.05 * 0.25) << "raw " << raw;
  }
}

TEST(FiniteField, RejectsBadConfigurations) {
  EXPECT_THROW(TowerConfig(4), InvalidConfig);
  EXPECT_THROW(TowerConfig(2, 0), InvalidConfig);
  EXPECT_THROW(TowerConfig(7, 12), InvalidConfig);
}

}  // namespace
