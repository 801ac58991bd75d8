#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "cfl/error.hpp"
#include "cfl/json_io.hpp"
#include "cfl/quantum.hpp"
#include "support.hpp"

namespace cfl {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Born, ProductStateComputationalBasis) {
  const HardyConfig c{};
  EXPECT_DOUBLE_EQ(joint_probability(c, Setting::One, Setting::One, Sign::Plus, Sign::Plus), 1.0);
  EXPECT_DOUBLE_EQ(joint_probability(c, Setting::One, Setting::One, Sign::Minus, Sign::Minus), 0.0);
}

TEST(Born, PerfectCorrelationAtQuarterPi) {
  HardyConfig c{};
  c.theta = kPi / 4;
  EXPECT_NEAR(joint_probability(c, Setting::One, Setting::One, Sign::Plus, Sign::Minus), 0.0, 1e-15);
  EXPECT_NEAR(joint_probability(c, Setting::One, Setting::One, Sign::Plus, Sign::Plus), 0.5, 1e-15);
}

TEST(Born, MatchesIndependentFormula) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const HardyConfig c = test::random_config(rng);
    for (const World& w : enumerate_worlds()) {
      const double a = c.angle(Region::Left, w.left_choice);
      const double b = c.angle(Region::Right, w.right_choice);
      EXPECT_NEAR(joint_probability(c, w.left_choice, w.right_choice, w.left_outcome, w.right_outcome),
                  test::born(c.theta, a, w.left_outcome, b, w.right_outcome), 1e-14);
    }
  }
}

TEST(Born, Completeness) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const HardyConfig c = test::random_config(rng);
    for (Setting l : {Setting::One, Setting::Two}) {
      for (Setting r : {Setting::One, Setting::Two}) {
        double sum = 0.0;
        for (Sign a : {Sign::Plus, Sign::Minus}) {
          for (Sign b : {Sign::Plus, Sign::Minus}) {
            const double p = joint_probability(c, l, r, a, b);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0 + 1e-15);
            sum += p;
          }
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
}

TEST(Born, NonFiniteConfigThrows) {
  HardyConfig c{};
  c.angle_r2 = std::nan("");
  EXPECT_FALSE(c.finite());
  EXPECT_THROW(joint_probability(c, Setting::One, Setting::Two, Sign::Plus, Sign::Plus), Error);
}

TEST(ExportTable, NoSignalingOverRandomConfigs) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const ProbabilityTable t = export_table(test::random_config(rng));
    EXPECT_NO_THROW(t.validate());
    EXPECT_LE(t.no_signaling_deviation(), 1e-9);
  }
}

TEST(ExportTable, HardyZeroCellsAreExact) {
  const ProbabilityTable& t = test::hardy_table();
  EXPECT_EQ(t.get(test::W("L2,R2,-,+")), 0.0);
  EXPECT_EQ(t.get(test::W("L2,R1,+,+")), 0.0);
  EXPECT_EQ(t.get(test::W("L1,R2,-,-")), 0.0);
  int zeros = 0;
  for (const World& w : enumerate_worlds()) zeros += t.get(w) == 0.0;
  EXPECT_EQ(zeros, 3);
}

TEST(VerifyHardy, OptimalConfig) {
  const PredictionReport r = verify_hardy(test::hardy_config(), 1e-9);
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.c1, 1e-9);
  EXPECT_LE(r.c2, 1e-9);
  EXPECT_LE(r.c3, 1e-9);
  EXPECT_NEAR(r.c4, 0.09017, 1e-4);
  EXPECT_GT(r.marginal_l1_minus, 0.0);
  EXPECT_GT(r.marginal_l1_minus, r.c4);
}

TEST(VerifyHardy, ProductStatesNeverPass) {
  // Grid over the angles at both product states, including the exact
  // multiples of pi/2 where the vanishing cells can be met.
  for (double theta : {0.0, kPi / 2}) {
    int satisfied = 0;
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        for (int c = 0; c < 8; ++c) {
          for (int d = 0; d < 8; ++d) {
            const HardyConfig cfg{theta, a * kPi / 8, b * kPi / 8, c * kPi / 8, d * kPi / 8};
            const PredictionReport r = verify_hardy(cfg, 1e-9);
            EXPECT_FALSE(r.pass());
            if (r.c1_pass && r.c2_pass && r.c3_pass) {
              ++satisfied;
              EXPECT_LE(r.c4, 1e-9);
            }
          }
        }
      }
    }
    EXPECT_GT(satisfied, 0);
  }
}

TEST(VerifyHardy, ToleranceSemantics) {
  const HardyConfig cfg{kPi / 4, kPi / 8, kPi / 3, kPi / 5, kPi / 7};
  const PredictionReport r = verify_hardy(cfg, 0.5);
  EXPECT_TRUE(r.c1_pass && r.c2_pass && r.c3_pass);
  EXPECT_EQ(r.tolerance, 0.5);
  EXPECT_DOUBLE_EQ(r.c1, joint_probability(cfg, Setting::Two, Setting::Two, Sign::Minus, Sign::Plus));
  EXPECT_DOUBLE_EQ(r.c4, joint_probability(cfg, Setting::One, Setting::One, Sign::Minus, Sign::Plus));
  const PredictionReport strict = verify_hardy(cfg, 1e-9);
  EXPECT_FALSE(strict.c1_pass && strict.c2_pass && strict.c3_pass);
  const PredictionReport high_floor = verify_hardy(test::hardy_config(), 1e-9, 0.5);
  EXPECT_FALSE(high_floor.c4_pass);
}

TEST(FindHardy, ReachesTheOptimum) {
  const PredictionReport r = verify_hardy(test::hardy_config(), 1e-10);
  EXPECT_TRUE(r.pass());
  EXPECT_NEAR(r.c4, test::kHardyOptimum, 1e-6);
  const HardyConfig& c = test::hardy_config();
  EXPECT_TRUE(c.entangled());
  for (double a : {c.angle_l1, c.angle_l2, c.angle_r1, c.angle_r2}) {
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, kPi);
  }
}

TEST(FindHardy, AgreesWithIndependentGridOracle) {
  const test::OracleResult o = test::hardy_oracle();
  EXPECT_LT(o.values.c1 + o.values.c2 + o.values.c3, 1e-6);
  EXPECT_NEAR(o.values.c4, test::kHardyOptimum, 1e-3);
  EXPECT_NEAR(verify_hardy(test::hardy_config(), 1e-9).c4, o.values.c4, 1e-3);
}

TEST(FindHardy, DeterministicPerSeed) {
  const SearchParams p{42, 64, 200, 4};
  const HardyConfig a = find_hardy(p);
  const HardyConfig b = find_hardy(p);
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  EXPECT_EQ(find_hardy(), test::hardy_config());
  for (std::uint64_t seed : {1u, 7u, 1234u}) {
    const PredictionReport r = verify_hardy(find_hardy({seed, 48, 200, 3}), 1e-9);
    EXPECT_TRUE(r.pass());
    EXPECT_NEAR(r.c4, test::kHardyOptimum, 1e-6);
  }
}

TEST(FindHardy, ThetaPerturbationBreaksConstraints) {
  HardyConfig c = test::hardy_config();
  c.theta += 0.1;
  const PredictionReport r = verify_hardy(c, 1e-9);
  EXPECT_GT(std::max({r.c1, r.c2, r.c3}), 1e-6);
}

TEST(FindHardy, ProjectionStaysOnSurface) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> a(0.0, kPi);
  for (int i = 0; i < 200; ++i) {
    const HardyConfig c = project_onto_hardy_surface(t(rng), a(rng));
    const PredictionReport r = verify_hardy(c, 1e-12, 0.0);
    EXPECT_TRUE(r.c1_pass && r.c2_pass && r.c3_pass);
    EXPECT_LE(r.c4, test::kHardyOptimum + 1e-12);
  }
}

TEST(ConfigJson, RoundTrip) {
  const HardyConfig& c = test::hardy_config();
  EXPECT_EQ(read_config_json(write_config_json(c)), c);
  EXPECT_THROW(read_config_json(R"({"theta": 1})"), SchemaError);
  EXPECT_THROW(read_config_json(R"({"theta": 1, "angles": {"L1": 0, "L2": 0, "R1": 0}})"),
               SchemaError);
  EXPECT_THROW(
      read_config_json(R"({"theta": 1, "angles": {"L1": 0, "L2": 0, "R1": 0, "R2": 0}, "x": 1})"),
      SchemaError);
  EXPECT_NO_THROW(
      read_config_json(R"({"angles": {"R2": 0, "L2": 0, "R1": 0, "L1": 0}, "theta": 1})"));
}

}  // namespace
}  // namespace cfl
