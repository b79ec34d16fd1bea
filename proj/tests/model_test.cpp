#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "electorate/combinatorics.hpp"
#include "electorate/model.hpp"

using namespace electorate;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an electorate::Error";
  return ErrorCode::InvalidArguments;
}

}  // namespace

TEST(ValidateSystem, AcceptsTableTwoSystem) {
  const auto sys = validate_system(5, {0.1, 0.3, 0.6});
  EXPECT_EQ(sys.electors(), 5u);
  EXPECT_EQ(sys.parties(), 3u);
  // checked, not renormalized
  EXPECT_EQ(sys.probs()[1], 0.3);
}

TEST(ValidateSystem, AcceptsDegenerateOneParty) {
  const auto sys = validate_system(1, {1.0});
  EXPECT_EQ(sys.electors(), 1u);
  EXPECT_EQ(sys.parties(), 1u);
}

TEST(ValidateSystem, RejectsEachErrorClass) {
  EXPECT_EQ(code_of([] { validate_system(5, {0.5, 0.6}); }), ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] { validate_system(0, {1.0}); }), ErrorCode::NonPositiveElectors);
  EXPECT_EQ(code_of([] { validate_system(-3, {1.0}); }), ErrorCode::NonPositiveElectors);
  EXPECT_EQ(code_of([] { validate_system(3, {}); }), ErrorCode::EmptyDistribution);
  EXPECT_EQ(code_of([] { validate_system(3, {1.2, -0.2}); }), ErrorCode::ProbabilityOutOfRange);
  EXPECT_EQ(code_of([] { validate_system(3, {std::numeric_limits<double>::quiet_NaN(), 1.0}); }),
            ErrorCode::ProbabilityOutOfRange);
}

TEST(ValidateSystem, NormalizationToleranceIsOneInABillion) {
  EXPECT_NO_THROW(validate_system(2, {0.5, 0.5 + 0.9e-9}));
  EXPECT_EQ(code_of([] { validate_system(2, {0.5, 0.5 + 1.1e-9}); }), ErrorCode::NotNormalized);
}

TEST(ValidateSystem, ZeroProbabilitiesAllowed) {
  EXPECT_NO_THROW(validate_system(4, {0.0, 1.0, 0.0}));
}

TEST(Coordinates, Equilibrium) {
  const auto eq = equilibrium_coordinates(validate_system(5, {0.1, 0.3, 0.6}));
  ASSERT_EQ(eq.size(), 3u);
  EXPECT_DOUBLE_EQ(eq[0], 0.5);
  EXPECT_DOUBLE_EQ(eq[1], 1.5);
  EXPECT_DOUBLE_EQ(eq[2], 3.0);

  const auto half = equilibrium_coordinates(ElectoralSystem(30, uniform_distribution(2)));
  EXPECT_EQ(half, (std::vector<double>{15.0, 15.0}));
  EXPECT_EQ(equilibrium_coordinates(validate_system(7, {1.0})), std::vector<double>{7.0});
}

TEST(Coordinates, Excess) {
  const auto sys = validate_system(5, {0.1, 0.3, 0.6});
  const auto a = excess_coordinates(Tally({0, 0, 5}), sys);
  EXPECT_NEAR(a[0], -0.5, 1e-15);
  EXPECT_NEAR(a[1], -1.5, 1e-15);
  EXPECT_NEAR(a[2], 2.0, 1e-15);
  const auto b = excess_coordinates(Tally({5, 0, 0}), sys);
  EXPECT_NEAR(b[0], 4.5, 1e-15);
  EXPECT_NEAR(b[1], -1.5, 1e-15);
  EXPECT_NEAR(b[2], -3.0, 1e-15);
  double sq = 0;
  for (double x : b) sq += x * x;
  EXPECT_NEAR(sq, 31.5, 1e-12);

  const auto at_eq = excess_coordinates(Tally({1, 3, 6}), validate_system(10, {0.1, 0.3, 0.6}));
  for (double x : at_eq) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(Coordinates, ExcessRejectsForeignTally) {
  const auto sys = validate_system(5, {0.1, 0.3, 0.6});
  EXPECT_EQ(code_of([&] { excess_coordinates(Tally({5, 0}), sys); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { excess_coordinates(Tally({1, 1, 1}), sys); }), ErrorCode::DimensionMismatch);
}

TEST(Coordinates, ExcessSumsToZeroOverEveryTally) {
  const std::vector<std::vector<double>> dists = {{0.1, 0.3, 0.6}, {0.25, 0.25, 0.25, 0.25}, {0.7, 0.3}, {1.0}};
  for (const auto& p : dists) {
    for (std::int64_t n = 1; n <= 9; ++n) {
      const auto sys = validate_system(n, p);
      double eq_total = 0;
      for (double x : equilibrium_coordinates(sys)) eq_total += x;
      EXPECT_NEAR(eq_total, static_cast<double>(n), 1e-12);
      for (const auto& t : enumerate_compositions(n, static_cast<std::int64_t>(p.size()))) {
        const auto x = excess_coordinates(t, sys);
        EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), 0.0, 1e-12);
      }
    }
  }
}

TEST(PartitionShapeType, CanonicalizesTally) {
  EXPECT_EQ(PartitionShape::of(Tally({1, 0, 4})), PartitionShape({4, 1, 0}));
  EXPECT_THROW(PartitionShape({1, 2}), Error);
}
