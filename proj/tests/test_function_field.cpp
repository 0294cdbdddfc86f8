#include <gtest/gtest.h>

#include "common.hpp"
#include "tnorm/harness.hpp"

using namespace tnorm;

namespace {

Magnitude pos(long n, long d = 1) { return Magnitude::pow2(n, d); }

struct FunctionField : ::testing::Test {
  Setting s = test::setting();
  TowerElem k(const char* text) const { return parse_tower_elem(s.K, text); }
};

TEST_F(FunctionField, GaussValue) {
  EXPECT_EQ(gauss_value(*s.K, k("1 + t").numerator()), pos(0));
  EXPECT_EQ(gauss_value(*s.K, k("t^2 + t^3").numerator()), pos(-2));
  EXPECT_EQ(gauss_value(*s.K, Poly(1)), Magnitude::zero());
}

TEST_F(FunctionField, Values) {
  EXPECT_EQ(value(k("1/t")), pos(1));
  EXPECT_EQ(value(k("t/(1+t)")), pos(-1));
  const auto x = k("(t + t^2)/(1 + t)");
  EXPECT_EQ(x, k("t"));
  EXPECT_EQ(value(x), pos(-1));
  EXPECT_EQ(value(k("0")), Magnitude::zero());
}

TEST_F(FunctionField, CanonicalForm) {
  const auto x = k("(2^2:0,1)*t/((2^2:0,1) + (2^2:0,1)*t)");
  EXPECT_EQ(x.denominator().leading().coeff, s.tower->one());
  EXPECT_EQ(x, k("t/(1+t)"));
  EXPECT_TRUE(k("t - t").denominator().is_constant());
  EXPECT_THROW(k("1/(t - t)"), ParseError);
  EXPECT_THROW(TowerElem::fraction(s.K, Poly::constant(1, s.tower->one()), Poly(1)), DivisionByZero);
}

TEST_F(FunctionField, RationalExponentsAndSeveralVariables) {
  FieldsConfig cfg;
  cfg.k_vars = {{"t", mpq_class(-1, 2)}, {"s", mpq_class(3, 4)}};
  const Setting two = test::setting(cfg);
  const auto x = parse_tower_elem(two.K, "t^3*s + s^2");
  EXPECT_EQ(value(x), pos(3, 2));
  EXPECT_EQ(value(parse_tower_elem(two.K, "t/s")), pos(-5, 4));
  const auto y = parse_tower_elem(two.K, "1/(t^2*s)");
  EXPECT_EQ(format_elem(y), "1/(t^2*s)");
  EXPECT_EQ(parse_tower_elem(two.K, format_elem(y)), y);
}

TEST_F(FunctionField, ValueIsMultiplicativeAndUltrametric) {
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = Rng::for_trial(5, i);
    const auto x = gen_tower_elem(s.K, cfg, rng), y = gen_tower_elem(s.K, cfg, rng);
    EXPECT_EQ(value(x * y), value(x) * value(y));
    EXPECT_EQ(value(x / y), value(x) * mag_pow(value(y), -1));
    const auto vs = value(x + y);
    EXPECT_LE(vs, mag_max(value(x), value(y)));
    if (value(x) != value(y)) {
      EXPECT_EQ(vs, mag_max(value(x), value(y)));
    }
  }
}

TEST_F(FunctionField, FieldOperations) {
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng = Rng::for_trial(6, i);
    const auto x = gen_tower_elem(s.K, cfg, rng), y = gen_tower_elem(s.K, cfg, rng);
    const auto z = gen_tower_elem(s.K, cfg, rng);
    EXPECT_EQ(x * inverse(x), TowerElem::one(s.K));
    EXPECT_EQ((x + y) * z, x * z + y * z);
    EXPECT_EQ((x - y) + y, x);
    EXPECT_EQ(power(x, 3), x * x * x);
  }
  EXPECT_THROW(inverse(TowerElem::zero(s.K)), DivisionByZero);
}

TEST_F(FunctionField, MixingSidesIsRejected) {
  EXPECT_THROW(TowerElem::one(s.K) + TowerElem::one(s.L), SideMismatch);
}

TEST_F(FunctionField, CoordinatizeExamples) {
  const auto o = s.tower->one(), z = s.tower->zero();
  {
    const auto c = coordinatize({k("1"), k("t")});
    EXPECT_EQ(c.denominator, Poly::constant(1, o));
    EXPECT_EQ(c.monomials, (std::vector<Exponents>{{0}, {1}}));
    EXPECT_EQ(c.matrix.row(0), (Vector{o, z}));
    EXPECT_EQ(c.matrix.row(1), (Vector{z, o}));
  }
  {
    const auto c = coordinatize({k("1/(1+t)"), k("t/(1+t)")});
    EXPECT_EQ(c.denominator, k("1 + t").numerator());
    EXPECT_EQ(c.matrix.row(0), (Vector{o, z}));
    EXPECT_EQ(c.matrix.row(1), (Vector{z, o}));
  }
  {
    const auto c = coordinatize({k("1/t"), k("1/(1+t)")});
    EXPECT_EQ(c.denominator, k("t + t^2").numerator());
    EXPECT_EQ(c.monomials, (std::vector<Exponents>{{0}, {1}}));
    EXPECT_EQ(c.matrix.row(0), (Vector{o, o}));
    EXPECT_EQ(c.matrix.row(1), (Vector{z, o}));
  }
  EXPECT_THROW(coordinatize({}), DimensionMismatch);
}

TEST(FunctionFieldCoordinates, RoundTripOverBothBases) {
  for (const Setting& s : {test::setting(), test::prime_base_setting()}) {
    ScenarioConfig cfg;
    for (std::uint64_t i = 0; i < 30; ++i) {
      Rng rng = Rng::for_trial(8, i);
      std::vector<TowerElem> xs;
      for (int j = 0; j < 3; ++j) xs.push_back(gen_tower_elem(s.K, cfg, rng));
      const auto c = coordinatize(xs);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        EXPECT_EQ(reconstruct(s.K, c, c.matrix.row(j)), xs[j]);
        EXPECT_EQ(row_value(*s.K, c, c.matrix.row(j)), value(xs[j]));
        if (!s.K->base().is_closure()) {
          for (const auto& e : c.matrix.row(j)) EXPECT_TRUE(s.tower->in_level(e.raw, 1));
        }
      }
    }
  }
}

TEST_F(FunctionField, MinCosetValueExamples) {
  {
    const auto r = min_coset_value(k("1 + t"), {k("1")});
    EXPECT_EQ(r.u, k("t"));
    EXPECT_EQ(r.coeffs, Vector{s.tower->one()});
    EXPECT_EQ(value(r.u), pos(-1));
  }
  {
    const auto r = min_coset_value(k("t"), {k("t^2")});
    EXPECT_EQ(r.u, k("t"));
    EXPECT_EQ(r.coeffs, Vector{s.tower->zero()});
  }
  {
    const auto r = min_coset_value(k("1 + t"), {});
    EXPECT_EQ(r.u, k("1 + t"));
    EXPECT_EQ(value(r.u), pos(0));
  }
}

/// Exhaustive search over span coefficients from a small level cannot beat the minimum.
void check_optimal(const Setting& s, std::uint32_t coeff_level, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.max_degree = 3;
  const auto coeffs = test::elements(*s.tower, coeff_level);
  for (std::uint64_t i = 0; i < 25; ++i) {
    Rng rng = Rng::for_trial(seed, i);
    const auto x = gen_tower_elem(s.K, cfg, rng);
    std::vector<TowerElem> span;
    const auto dim = 1 + rng.below(2);
    for (std::uint64_t j = 0; j < dim; ++j) span.push_back(gen_tower_elem(s.K, cfg, rng));
    const auto r = min_coset_value(x, span);
    TowerElem check = x;
    for (std::size_t j = 0; j < span.size(); ++j) check = check + scale(span[j], r.coeffs[j]);
    EXPECT_EQ(check, r.u);
    const auto best = value(r.u);
    for (const auto& a : coeffs) {
      for (const auto& b : coeffs) {
        TowerElem y = x + scale(span[0], a);
        if (span.size() > 1) y = y + scale(span[1], b);
        EXPECT_GE(value(y), best);
      }
    }
  }
}

TEST(FunctionFieldCoset, OptimalOverClosureBase) { check_optimal(test::setting(), 2, 31); }

TEST(FunctionFieldCoset, OptimalOverPrimeBase) { check_optimal(test::prime_base_setting(), 1, 32); }

}  // namespace
