#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "electorate/montecarlo.hpp"

using namespace electorate;

TEST(SampleTally, DeterministicOutcome) {
  const auto sys = validate_system(5, {0.0, 0.0, 1.0});
  Engine engine(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_tally(sys, engine), Tally({0, 0, 5}));
}

TEST(SampleTally, SingleElectorIsOneHot) {
  const auto sys = validate_system(1, {0.5, 0.5});
  Engine engine(4);
  int first = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = sample_tally(sys, engine);
    EXPECT_EQ(t.total(), 1u);
    first += static_cast<int>(t[0]);
  }
  EXPECT_GT(first, 400);
  EXPECT_LT(first, 600);
}

TEST(SampleTally, LargeSampleMatchesProbabilities) {
  const auto sys = validate_system(100000, {0.1, 0.3, 0.6});
  Engine engine(5);
  const auto t = sample_tally(sys, engine);
  EXPECT_EQ(t.total(), 100000u);
  for (std::size_t k = 0; k < 3; ++k) {
    const double p = sys.probs()[k];
    const double sigma = std::sqrt(p * (1 - p) / 100000.0);
    EXPECT_LE(std::abs(static_cast<double>(t[k]) / 100000.0 - p), 5 * sigma) << k;
  }
}

TEST(SampleTally, ZeroProbabilityPartyNeverDrawn) {
  const auto sys = validate_system(50, {0.5, 0.0, 0.5});
  Engine engine(6);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(sample_tally(sys, engine)[1], 0u);
}

TEST(EstimateVariance, TableTwoSystem) {
  const auto est = estimate_variance(validate_system(5, {0.1, 0.3, 0.6}), 1000000, 42);
  EXPECT_NEAR(est.mean, 2.7, 3 * est.std_error);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_EQ(est.trials, 1000000u);
  EXPECT_EQ(est.seed, 42u);
}

TEST(EstimateVariance, TwoHundredElectors) {
  const auto est = estimate_variance(validate_system(200, {0.1, 0.3, 0.6}), 200000, 8);
  EXPECT_NEAR(est.mean, 108.0, 3 * est.std_error);
}

TEST(EstimateVariance, OnePartyHasNoFluctuation) {
  const auto est = estimate_variance(validate_system(12, {1.0}), 500, 1);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(EstimateVariance, TooFewTrials) {
  try {
    estimate_variance(validate_system(5, {0.5, 0.5}), 99, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewTrials);
  }
}

TEST(EstimateVariance, IdenticalAcrossRunsAndThreadCounts) {
  const auto sys = validate_system(9, {0.2, 0.3, 0.5});
  const auto one = estimate_variance(sys, 5000, 77, 1);
  const auto again = estimate_variance(sys, 5000, 77, 1);
  const auto many = estimate_variance(sys, 5000, 77, 7);
  EXPECT_EQ(one, again);
  // bitwise, not approximate
  EXPECT_EQ(std::memcmp(&one.mean, &many.mean, sizeof(double)), 0);
  EXPECT_EQ(one, many);
  EXPECT_NE(one, estimate_variance(sys, 5000, 78, 1));
}

TEST(MonteCarloProperty, WithinFourStandardErrors) {
  const std::vector<ElectoralSystem> systems = {validate_system(5, {0.1, 0.3, 0.6}),
                                                validate_system(12, {0.25, 0.25, 0.5}),
                                                ElectoralSystem(30, uniform_distribution(2))};
  for (const auto& sys : systems) {
    const double expected = static_cast<double>(sys.electors()) * (1.0 - sys.distribution().sum_of_squares());
    int inside = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto est = estimate_variance(sys, 100000, seed);
      if (std::abs(est.mean - expected) <= 4 * est.std_error) ++inside;
    }
    EXPECT_GE(inside, 99) << "N=" << sys.electors();
  }
}
