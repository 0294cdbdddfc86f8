#include <gtest/gtest.h>

#include "common.hpp"
#include "tnorm/harness.hpp"

using namespace tnorm;

namespace {

TEST(Parse, FieldsConfig) {
  const auto cfg = parse_fields_config(R"(
    # comment
    p = 3
    level_bound = 6
    base = 1
    K = t:-1, s:1/2
    L = u
    K_constants = 2
  )");
  EXPECT_EQ(cfg.p, 3u);
  EXPECT_EQ(cfg.level_bound, 6u);
  EXPECT_EQ(cfg.base.level, 1u);
  ASSERT_EQ(cfg.k_vars.size(), 2u);
  EXPECT_EQ(cfg.k_vars[1].name, "s");
  EXPECT_EQ(cfg.k_vars[1].exponent, mpq_class(1, 2));
  EXPECT_EQ(cfg.l_vars[0].exponent, mpq_class(-1));
  EXPECT_EQ(cfg.k_constants, 2u);
}

TEST(Parse, FieldsConfigErrors) {
  EXPECT_THROW(parse_fields_config("p = x"), ParseError);
  EXPECT_THROW(parse_fields_config("colour = red"), ParseError);
  EXPECT_THROW(parse_fields_config("K = t:1/0"), ParseError);
  EXPECT_THROW(parse_fields_config("p 2"), ParseError);
}

TEST(Parse, ElementErrorsCarryPositions) {
  const Setting s = test::setting();
  try {
    (void)parse_tensor(s, "t (x) 1 + u (x) 1");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
  EXPECT_THROW(parse_tensor(s, "t (x)"), ParseError);
  EXPECT_THROW(parse_tensor(s, "t + 1"), ParseError);
  EXPECT_THROW(parse_tensor(s, "(2^2:1) (x) 1"), ParseError);
  EXPECT_THROW(parse_tensor(s, "(2^5:1,0,0,0,0) (x) 1"), ParseError);
  EXPECT_THROW(parse_tower_elem(s.K, "t^"), ParseError);
  EXPECT_THROW(parse_tower_elem(s.K, "t)"), ParseError);
}

TEST(Parse, Coefficients) {
  const Setting s = test::setting();
  const auto w = parse_tower_elem(s.K, "2^2:0,1");
  EXPECT_EQ(w.numerator().leading().coeff, s.tower->generator(2));
  EXPECT_EQ(parse_tower_elem(s.K, "3"), parse_tower_elem(s.K, "1"));
  EXPECT_EQ(parse_tower_elem(s.K, "-t"), parse_tower_elem(s.K, "t"));
}

TEST(Parse, PrimeBaseRejectsForeignConstants) {
  const Setting s = test::prime_base_setting();
  EXPECT_NO_THROW(parse_tensor(s, "(2^2:0,1) (x) u"));
  EXPECT_THROW(parse_tensor(s, "(2^4:0,1,0,0) (x) u"), ParseError);
}

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, PrintThenParseIsIdentity) {
  ScenarioConfig cfg;
  FieldsConfig fields;
  if (GetParam() == 1) {
    cfg.p = fields.p = 3;
  }
  if (GetParam() == 2) {
    cfg.k_vars = fields.k_vars = {{"t", mpq_class(-1)}, {"s", mpq_class(2, 3)}};
    cfg.l_vars = fields.l_vars = {{"u", mpq_class(1, 2)}, {"v", mpq_class(-3)}};
  }
  const Setting s = test::setting(fields);
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng = Rng::for_trial(21, i);
    const auto z = gen_tensor(s, cfg, rng);
    const auto text = format_tensor(z);
    const auto back = parse_tensor(s, text);
    EXPECT_TRUE(is_zero(t_sub(back, z))) << text;
    EXPECT_EQ(format_tensor(back), text);
    for (const auto& t : z.terms()) EXPECT_EQ(parse_tower_elem(s.K, format_elem(t.x)), t.x);
  }
}

INSTANTIATE_TEST_SUITE_P(Configs, RoundTrip, ::testing::Values(0, 1, 2));

}  // namespace
