#include <gtest/gtest.h>

#include "common.hpp"
#include "tnorm/harness.hpp"

using namespace tnorm;

namespace {

Magnitude pos(long n, long d = 1) { return Magnitude::pow2(n, d); }

struct Tensor : ::testing::Test {
  Setting s = test::setting();
  TensorElem z(const char* text) const { return parse_tensor(s, text); }
};

TEST_F(Tensor, Addition) {
  const auto a = z("t (x) 1 + 1 (x) u");
  EXPECT_TRUE(is_zero(t_sub(t_add(a, TensorElem(s.K, s.L, {})), a)));
  EXPECT_TRUE(is_zero(t_add(z("t (x) u"), z("t (x) u"))));
  EXPECT_EQ(t_add(z("t (x) 1"), z("1 (x) u")).terms().size(), 2u);
  EXPECT_EQ(tensor_norm(t_add(z("t (x) 1"), z("1 (x) u"))), pos(-1));
}

TEST_F(Tensor, Multiplication) {
  const auto a = z("t (x) 1 + 1 (x) u");
  EXPECT_TRUE(is_zero(t_sub(t_mul(a, TensorElem::one(s.K, s.L)), a)));
  EXPECT_TRUE(is_zero(t_sub(t_mul(z("t (x) 1"), z("1 (x) u")), z("t (x) u"))));
  EXPECT_TRUE(is_zero(t_sub(t_mul(a, a), z("t^2 (x) 1 + 1 (x) u^2"))));
}

TEST_F(Tensor, EliminateDependent) {
  const auto r = eliminate_dependent(z("(1+t) (x) u + 1 (x) u"));
  ASSERT_EQ(r.terms().size(), 1u);
  EXPECT_TRUE(is_zero(t_sub(r, z("t (x) u"))));
  EXPECT_EQ(eliminate_dependent(z("t (x) 1 + 1 (x) u")).terms().size(), 2u);

  FieldsConfig cfg;
  cfg.p = 3;
  const Setting s3 = test::setting(cfg);
  const auto w = eliminate_dependent(parse_tensor(s3, "(1+t) (x) u/(1+u) + (1+t) (x) u/(1+u)"));
  ASSERT_EQ(w.terms().size(), 1u);
  EXPECT_TRUE(is_zero(t_sub(w, parse_tensor(s3, "(2 + 2*t) (x) u/(1+u)"))));
}

TEST_F(Tensor, OrthogonalizeLeft) {
  const auto rep = orthogonalize_left(z("t (x) 1 + 1 (x) u"));
  ASSERT_EQ(rep.terms.size(), 2u);
  EXPECT_EQ(rep.terms[0].u_value, pos(-1));
  EXPECT_EQ(rep.terms[1].u_value, pos(0));
  EXPECT_EQ(rep.norm, pos(-1));
  EXPECT_TRUE(orthogonalize_left(TensorElem(s.K, s.L, {})).terms.empty());
  EXPECT_TRUE(orthogonalize_left(z("t (x) u + t (x) u")).norm.is_zero());
}

TEST_F(Tensor, NormExamples) {
  EXPECT_EQ(tensor_norm(z("1 (x) 1")), pos(0));
  EXPECT_EQ(tensor_norm(z("t (x) 1 + 1 (x) u")), pos(-1));
  EXPECT_EQ(tensor_norm(z("(1+t) (x) u + 1 (x) u")), pos(-2));
  EXPECT_EQ(tensor_norm(z("1/t (x) u^3")), pos(-2));
}

TEST_F(Tensor, NormAgainstPerturbedRepresentations) {
  const auto a = z("t (x) 1 + 1 (x) u");
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = Rng::for_trial(77, i);
    TensorElem w = a;
    for (int r = 0; r < 3; ++r) w = random_rewrite(w, s, cfg, rng);
    // The max over any representation bounds the norm from above.
    Magnitude naive = Magnitude::zero();
    for (const auto& t : w.terms()) naive = mag_max(naive, value(t.x) * value(t.y));
    EXPECT_GE(naive, pos(-1));
    EXPECT_EQ(tensor_norm(w), pos(-1));
  }
}

TEST_F(Tensor, IsZero) {
  EXPECT_TRUE(is_zero(TensorElem(s.K, s.L, {})));
  EXPECT_TRUE(is_zero(z("t (x) u + t (x) u")));
  EXPECT_FALSE(is_zero(z("t (x) 1 + 1 (x) u")));
  EXPECT_TRUE(is_zero(z("(t+1) (x) u - t (x) u - 1 (x) u")));
}

TEST_F(Tensor, PureDecomposition) {
  {
    const auto d = pure_decompose(z("t (x) 1 + 1 (x) u"));
    EXPECT_EQ(d.alpha, pos(0));
    EXPECT_EQ(d.beta, pos(-1));
    EXPECT_TRUE(is_zero(t_sub(d.pure_part, z("1 (x) u"))));
    EXPECT_TRUE(is_zero(t_sub(d.tail, z("t (x) 1"))));
  }
  {
    const auto d = pure_decompose(z("1 (x) 1"));
    EXPECT_EQ(d.alpha, pos(0));
    EXPECT_EQ(d.beta, pos(0));
    EXPECT_TRUE(d.tail.terms().empty());
  }
  {
    const auto d = pure_decompose(z("t (x) u"));
    EXPECT_EQ(d.alpha, pos(-1));
    EXPECT_EQ(d.beta, pos(-1));
    EXPECT_TRUE(d.tail.terms().empty());
  }
  EXPECT_THROW(pure_decompose(z("t (x) u + t (x) u")), DegenerateInput);
}

TEST_F(Tensor, ValueEstimate) {
  const auto o = s.tower->one(), zero = s.tower->zero();
  const auto k = [&](const char* text) { return parse_tower_elem(s.K, text); };
  EXPECT_TRUE(value_estimate_check({k("t"), k("1")}, {1, 1}, {o, o}));
  EXPECT_TRUE(value_estimate_check({k("t"), k("1")}, {1, 1}, {zero, zero}));
  EXPECT_TRUE(value_estimate_check({k("1 + t")}, {1}, {s.tower->generator(2)}));
  // 1 + t is not least in its coset modulo 1, so r = 1 is not admissible.
  EXPECT_THROW(value_estimate_check({k("1"), k("1 + t")}, {1, 1}, {o, o}), InvalidInstance);
  EXPECT_TRUE(value_estimate_check({k("1"), k("1 + t")}, {1, 2}, {o, o}));
  EXPECT_THROW(value_estimate_check({k("t")}, {mpq_class(1, 2)}, {o}), InvalidInstance);
  EXPECT_THROW(value_estimate_check({k("t"), k("t")}, {1, 1}, {o, o}), InvalidInstance);
}

TEST_F(Tensor, CompatibilityChecks) {
  FieldsConfig other;
  other.k_vars = {{"x1", mpq_class(-1)}};
  const Setting s2 = test::setting(other);
  EXPECT_THROW(t_add(z("t (x) u"), parse_tensor(s2, "x1 (x) u")), SideMismatch);
  EXPECT_THROW(TensorElem(s.K, s.K, {}), SideMismatch);
  FieldsConfig clash;
  clash.l_vars = {{"t", mpq_class(-1)}};
  EXPECT_THROW(Setting::build(clash), InvalidConfig);
}

TEST_F(Tensor, RightOrthogonalizationAgrees) {
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = Rng::for_trial(3, i);
    const auto w = gen_tensor(s, cfg, rng);
    EXPECT_EQ(tensor_norm(w), tensor_norm_right(w));
    EXPECT_EQ(tensor_norm(w), tensor_norm(w.transposed()));
  }
}

TEST_F(Tensor, ReducedRepReconstructsInput) {
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = Rng::for_trial(4, i);
    const auto w = gen_tensor(s, cfg, rng);
    const auto rep = orthogonalize_left(w);
    EXPECT_TRUE(is_zero(t_sub(rep.to_tensor(), w)));
    Magnitude m = Magnitude::zero();
    for (const auto& t : rep.terms) {
      EXPECT_EQ(t.u_value, value(t.u));
      EXPECT_EQ(t.v_value, value(t.v));
      m = mag_max(m, t.product);
    }
    EXPECT_EQ(m, rep.norm);
  }
}

TEST(TensorPrimeBase, ZeroDivisorWitness) {
  FieldsConfig cfg;
  cfg.base = BaseField::finite(1);
  cfg.k_vars = {};
  cfg.l_vars = {};
  cfg.k_constants = 2;
  cfg.l_constants = 2;
  const Setting s = test::setting(cfg);
  const auto z = parse_tensor(s, "(2^2:0,1) (x) 1 + 1 (x) (2^2:0,1)");
  const auto w = t_add(z, TensorElem::one(s.K, s.L));
  EXPECT_EQ(tensor_norm(z), Magnitude::one());
  EXPECT_EQ(tensor_norm(w), Magnitude::one());
  EXPECT_TRUE(is_zero(t_mul(z, w)));
  EXPECT_TRUE(tensor_norm(t_mul(z, w)).is_zero());
  const auto witness = counterexample_witness(s);
  EXPECT_TRUE(is_zero(t_sub(witness.a, z)));
  EXPECT_TRUE(is_zero(t_sub(witness.b, w)));
}

}  // namespace
