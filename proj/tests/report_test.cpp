#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "electorate/electorate.hpp"

using namespace electorate;

TEST(Format, ShortestRoundTrips) {
  for (double x : {0.1, 2.7, 656.1, 1.0 / 3.0, 1e-300, 123456789.125}) {
    EXPECT_EQ(std::stod(format::shortest(x)), x);
  }
  EXPECT_EQ(format::shortest(0.1), "0.1");
  EXPECT_EQ(format::shortest(243.0), "243");
}

TEST(Format, CsvQuoting) {
  EXPECT_EQ(format::csv_field("plain"), "plain");
  EXPECT_EQ(format::csv_field("[1, 2]"), "\"[1, 2]\"");
  EXPECT_EQ(format::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format::csv_row({"a", "b,c"}), "a,\"b,c\"\n");
}

TEST(PartitionGrid, TableOne) {
  const auto grid = partition_grid(5, 5);
  ASSERT_EQ(grid.size(), 5u);
  const int expected[] = {1, 3, 5, 6, 7};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(grid[i].cardinality, expected[i]);
    EXPECT_EQ(grid[i].shapes.size(), static_cast<std::size_t>(expected[i]));
  }
  const auto text = partition_grid_text(grid, 5);
  EXPECT_NE(text.find("[2, 2, 1, 0, 0]"), std::string::npos);
  EXPECT_NE(text.find("count = 7"), std::string::npos);
}

TEST(MultiplicityTableReport, TableTwo) {
  const auto t = multiplicity_table(validate_system(5, {0.1, 0.3, 0.6}));
  ASSERT_EQ(t.rows.size(), 21u);
  EXPECT_NEAR(t.total_weight, 243.0, 243.0 * 1e-12);
  EXPECT_NEAR(t.weighted_sum, 656.1, 1e-9);
  EXPECT_NEAR(t.variance, 2.7, 2.7 * 1e-12);
  // row order follows the published table
  EXPECT_EQ(t.rows[0].tally, Tally({5, 0, 0}));
  EXPECT_EQ(t.rows[1].tally, Tally({0, 5, 0}));
  EXPECT_EQ(t.rows[2].tally, Tally({0, 0, 5}));
  EXPECT_EQ(t.rows[3].tally, Tally({4, 1, 0}));
  EXPECT_EQ(t.rows[20].tally, Tally({1, 2, 2}));

  const auto rounded = multiplicity_table_text(t, true);
  EXPECT_NE(rounded.find("18.9"), std::string::npos);
  EXPECT_NE(rounded.find("656.1"), std::string::npos);
  const auto csv = multiplicity_table_csv(t, false);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 23);
}

TEST(Branches, BuiltinBrackets) {
  const auto rows = branch_table();
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].stability.lower, 0.0);
  EXPECT_EQ(rows[0].rigidity.lower, 0.0);
  EXPECT_NEAR(rows[2].stability.lower, 0.8600, 5e-5);
  EXPECT_NEAR(rows[2].stability.upper, 0.9005, 5e-5);
  for (const auto& r : rows) {
    EXPECT_EQ(r.stability.lower, 1.0 - 1.0 / std::sqrt(static_cast<double>(r.spec.n_low)));
    EXPECT_EQ(r.stability.upper, 1.0 - 1.0 / std::sqrt(static_cast<double>(r.spec.n_high)));
    EXPECT_EQ(r.rigidity.upper, 1.0);
  }
  // the two rows whose rigidity floor does not round to the published digits
  EXPECT_TRUE(rows[0].notes.empty());
  EXPECT_EQ(rows[1].notes.size(), 1u);
  EXPECT_EQ(rows[2].notes.size(), 1u);
  EXPECT_TRUE(rows[3].notes.empty());
}

TEST(Branches, RejectsMalformedSpec) {
  EXPECT_THROW(analyze_branch({"bad", 5, 2, 1, 3, {}, {}}), Error);
  EXPECT_THROW(analyze_branch({"bad", 1, 2, 4, 3, {}, {}}), Error);
}

TEST(Figures, StabilityModesAtEquilibrium) {
  const auto dist = validate_distribution({0.1, 0.3, 0.6});
  const auto pts = stability_figure(dist, {200});
  EXPECT_EQ(pts.size(), 3u * 201u);
  for (std::size_t k = 1; k <= 3; ++k) {
    const DensityPoint* best = nullptr;
    for (const auto& p : pts)
      if (p.party == k && (!best || p.density > best->density)) best = &p;
    ASSERT_NE(best, nullptr);
    EXPECT_EQ(best->count, static_cast<count_t>(std::lround(200 * dist[k - 1])));
    EXPECT_EQ(best->equilibrium, dist[k - 1]);
  }
}

TEST(Figures, RigidityOnePartyIsSinglePoint) {
  const auto pts = rigidity_figure(30, {1});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].abscissa, 0.0);
  EXPECT_EQ(pts[0].density, 1.0);
}

TEST(Figures, RigidityTwoPartiesSymmetric) {
  const auto pts = rigidity_figure(30, {2});
  std::map<double, double> curve;
  for (const auto& p : pts)
    if (p.party == 1) curve[p.abscissa] = p.density;
  EXPECT_EQ(curve.size(), 31u);
  for (const auto& [x, d] : curve) {
    ASSERT_TRUE(curve.count(-x));
    EXPECT_NEAR(curve.at(-x), d, 1e-12);
  }
}

TEST(Analysis, JsonRoundTrip) {
  const auto rec = analyze(validate_system(5, {0.1, 0.3, 0.6}), true, kDefaultEnumerationCap, "2026-01-01T00:00:00Z");
  const auto j = to_json(rec);
  const auto back = analysis_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.system, rec.system);
  EXPECT_EQ(back.attributes.fractional_fluctuation, rec.attributes.fractional_fluctuation);
  ASSERT_TRUE(back.brute_force);
  EXPECT_EQ(back.brute_force->variance, rec.brute_force->variance);

  const auto plain = analyze(validate_system(3, {0.5, 0.5}), false, kDefaultEnumerationCap, "t");
  EXPECT_FALSE(analysis_from_json(to_json(plain)).brute_force);
}

TEST(Analysis, BruteForceAgreement) {
  auto rec = analyze(validate_system(6, {0.2, 0.2, 0.6}), true, kDefaultEnumerationCap, "t");
  EXPECT_TRUE(brute_force_agrees(rec));
  rec.brute_force->variance *= 1.01;
  EXPECT_FALSE(brute_force_agrees(rec));
  rec.brute_force.reset();
  EXPECT_TRUE(brute_force_agrees(rec));
}

TEST(Analysis, BruteForceCap) {
  try {
    analyze(validate_system(40, std::vector<double>(10, 0.1)), true, 1000, "t");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EnumerationTooLarge);
  }
}

TEST(Verify, SmallRunPassesAndIsDeterministic) {
  VerifyOptions opt;
  opt.max_electors = 4;
  opt.max_parties = 3;
  opt.points = 3;
  opt.seed = 42;
  const auto a = run_verify(opt);
  EXPECT_TRUE(a.passed());
  EXPECT_LT(a.max_relative_deviation, 1e-9);
  EXPECT_EQ(to_json(a).dump(), to_json(run_verify(opt)).dump());
}

TEST(Verify, SingleElectorSweep) {
  VerifyOptions opt;
  opt.max_electors = 1;
  opt.points = 5;
  EXPECT_TRUE(run_verify(opt).passed());
}
