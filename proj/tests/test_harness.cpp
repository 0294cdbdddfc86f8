#include <gtest/gtest.h>

#include "common.hpp"
#include "tnorm/harness.hpp"

using namespace tnorm;

namespace {

TEST(Harness, SplitMixReferenceValues) {
  // Reference outputs of splitmix64 seeded with 0.
  Rng rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Harness, GeneratorIsDeterministic) {
  const Setting s = test::setting();
  ScenarioConfig cfg;
  Rng a = Rng::for_trial(9, 4), b = Rng::for_trial(9, 4);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(gen_tower_elem(s.K, cfg, a), gen_tower_elem(s.K, cfg, b));
}

TEST(Harness, DegreeZeroGivesConstants) {
  const Setting s = test::setting();
  ScenarioConfig cfg;
  cfg.max_degree = 0;
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto x = gen_tower_elem(s.K, cfg, rng);
    EXPECT_TRUE(x.numerator().is_constant());
    EXPECT_TRUE(x.denominator().is_constant());
    EXPECT_FALSE(x.is_zero());
  }
}

TEST(Harness, DrawsRespectBounds) {
  FieldsConfig fields;
  fields.k_vars = {{"t", mpq_class(-1)}, {"s", mpq_class(1, 2)}};
  const Setting s = test::setting(fields);
  ScenarioConfig cfg;
  cfg.max_degree = 3;
  cfg.k_vars = fields.k_vars;
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto x = gen_tower_elem(s.K, cfg, rng);
    ASSERT_FALSE(x.is_zero());
    EXPECT_EQ(x.numerator().nvars(), 2u);
    EXPECT_LE(x.numerator().total_degree(), 3u);
    EXPECT_LE(x.denominator().total_degree(), 3u);
    const auto c = gen_constant(*s.K, cfg.level_bound, rng, true);
    EXPECT_LE(s.tower->minimal_level(c.raw), 4u);
    EXPECT_FALSE(c.is_zero());
  }
}

TEST(Harness, PrimeBaseDrawsStayInTheConstantField) {
  const Setting s = test::prime_base_setting();
  ScenarioConfig cfg;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto x = gen_tower_elem(s.L, cfg, rng);
    for (const auto& t : x.numerator().terms()) EXPECT_TRUE(s.tower->in_level(t.coeff.raw, 2));
    EXPECT_TRUE(s.tower->in_level(gen_scalar(*s.L, 4, rng, false).raw, 1));
  }
}

TEST(Harness, RewritesPreserveTheElement) {
  const Setting s = test::setting();
  ScenarioConfig cfg;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng::for_trial(10, i);
    const auto z = gen_tensor(s, cfg, rng);
    EXPECT_TRUE(is_zero(t_sub(random_rewrite(z, s, cfg, rng), z)));
  }
}

TEST(Harness, InvalidConfigs) {
  ScenarioConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_suite("ultrametric", cfg), InvalidConfig);
  cfg.trials = 5;
  EXPECT_THROW(run_suite("bogus", cfg), InvalidConfig);
  cfg.max_terms = 0;
  EXPECT_THROW(run_suite("submult", cfg), InvalidConfig);
  cfg.max_terms = 4;
  cfg.closed_base = false;
  EXPECT_THROW(run_suite("mult-closed", cfg), InvalidConfig);
  cfg.closed_base = true;
  cfg.level_bound = 5;
  EXPECT_THROW(run_suite("submult", cfg), InvalidConfig);
}

class Suites : public ::testing::TestWithParam<std::string> {};

TEST_P(Suites, PassOnDefaults) {
  ScenarioConfig cfg;
  cfg.trials = 60;
  cfg.seed = 3;
  const auto report = run_suite(GetParam(), cfg);
  EXPECT_TRUE(report.passed()) << report.to_text();
  EXPECT_EQ(report.trials, 60);
}

INSTANTIATE_TEST_SUITE_P(All, Suites, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(Harness, ReportsAreByteIdentical) {
  ScenarioConfig cfg;
  cfg.trials = 40;
  cfg.seed = 1234;
  const auto a = run_suite("repr-invariance", cfg).to_text();
  const auto b = run_suite("repr-invariance", cfg, 4).to_text();
  EXPECT_EQ(a, b);
  EXPECT_EQ(run_suite("repr-invariance", cfg).to_json().dump(), run_suite("repr-invariance", cfg, 3).to_json().dump());
  EXPECT_EQ(a.find("elapsed"), std::string::npos);
}

TEST(Harness, FirstTrialOffsetReplaysTheSameStream) {
  const Setting s = test::setting();
  ScenarioConfig cfg;
  Rng whole = Rng::for_trial(5, 17);
  Rng replay = Rng::for_trial(5, 17);
  EXPECT_EQ(format_tensor(gen_tensor(s, cfg, whole)), format_tensor(gen_tensor(s, cfg, replay)));
}

TEST(Harness, FailuresCarryReplayInformation) {
  // A fabricated entry exercises the failure layout.
  ScenarioConfig cfg;
  cfg.trials = 3;
  cfg.seed = 8;
  auto report = run_suite("counterexample", cfg);
  EXPECT_TRUE(report.passed());
  SuiteFailure f{2, {{"z", "t (x) u"}}, "x", "y", "tnorm check submult " + cfg.replay_flags(2)};
  report.failures.push_back(f);
  const auto text = report.to_text();
  EXPECT_NE(text.find("--from-trial 2 --trials 1"), std::string::npos);
  EXPECT_NE(text.find("status: FAIL"), std::string::npos);
  EXPECT_EQ(report.to_json()["failures"][0]["trial"], 2);
}

TEST(Harness, CounterexampleForOddCharacteristic) {
  ScenarioConfig cfg;
  cfg.p = 3;
  cfg.trials = 20;
  EXPECT_TRUE(run_suite("counterexample", cfg).passed());
}

TEST(Harness, PrimeBaseSuites) {
  ScenarioConfig cfg;
  cfg.closed_base = false;
  cfg.trials = 40;
  for (const char* name : {"ultrametric", "submult", "crossnorm", "symmetry", "repr-invariance", "nondegeneracy",
                           "value-estimate"}) {
    const auto r = run_suite(name, cfg);
    EXPECT_TRUE(r.passed()) << r.to_text();
  }
}

}  // namespace
