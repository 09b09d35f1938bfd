// Copyright 2026 The Editlens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "editlens/stats.h"

#include <gtest/gtest.h>

#include <cmath>

#include "editlens/error.h"
#include "editlens/random.h"
#include "oracles.h"

namespace editlens {
namespace {

using Sample = std::vector<double>;

TEST(SpecialFunctionsTest, KnownValues) {
  EXPECT_NEAR(RegularizedIncompleteBeta(2, 3, 0.4), 0.5248, 1e-12);
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 0), 0.0);
  EXPECT_EQ(RegularizedIncompleteBeta(2, 3, 1), 1.0);
  EXPECT_NEAR(RegularizedUpperGamma(1, 2), std::exp(-2.0), 1e-14);
  EXPECT_NEAR(ChiSquareSurvival(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_NEAR(StudentTTwoTailed(2.0, 10), 0.07338803477074, 1e-12);
  EXPECT_THROW(StudentTTwoTailed(1, 0), Error);
}

TEST(WelchTest, WorkedExample) {
  const TTestResult r = WelchTTest(Sample{1, 2, 3, 4, 5}, Sample{2, 3, 4, 5, 6});
  EXPECT_NEAR(r.t, -1.0, 1e-12);
  EXPECT_NEAR(r.df, 8.0, 1e-12);
  EXPECT_NEAR(r.p, 0.3465935, 1e-4);
}

TEST(WelchTest, IdenticalSamples) {
  const TTestResult r = WelchTTest(Sample{1, 2, 3}, Sample{1, 2, 3});
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.p, 1.0);
}

TEST(WelchTest, DegenerateInputs) {
  const TTestResult r = WelchTTest(Sample{2, 2, 2}, Sample{2, 2});
  EXPECT_TRUE(r.zero_variance);
  EXPECT_EQ(r.p, 1.0);
  try {
    WelchTTest(Sample{1, 1}, Sample{2, 2});
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVariance);
  }
  try {
    WelchTTest(Sample{1}, Sample{2, 3});
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSample);
  }
}

TEST(WelchTest, MatchesArbitraryPrecisionOracle) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    Sample a(2 + UniformIndex(rng, 40)), b(2 + UniformIndex(rng, 40));
    const double shift = StandardNormal(rng);
    const double sb = 0.2 + 3 * UniformDouble(rng);
    for (double &x : a) x = StandardNormal(rng);
    for (double &x : b) x = shift + sb * StandardNormal(rng);
    const TTestResult r = WelchTTest(a, b);
    const oracle::WelchReference ref = oracle::Welch(a, b);
    EXPECT_NEAR(r.t, ref.t, 1e-9 * std::max(1.0, std::abs(ref.t)));
    EXPECT_NEAR(r.df, ref.df, 1e-9 * ref.df);
    EXPECT_NEAR(r.p, ref.p, 1e-8);
  }
}

TEST(WelchTest, AntisymmetricAndAffineInvariant) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Sample a(3 + UniformIndex(rng, 20)), b(3 + UniformIndex(rng, 20));
    for (double &x : a) x = StandardNormal(rng);
    for (double &x : b) x = 0.5 + StandardNormal(rng);
    const TTestResult ab = WelchTTest(a, b);
    const TTestResult ba = WelchTTest(b, a);
    EXPECT_NEAR(ab.t, -ba.t, 1e-12);
    EXPECT_NEAR(ab.p, ba.p, 1e-12);
    EXPECT_NEAR(ab.df, ba.df, 1e-9);
    const double s = 0.1 + 10 * UniformDouble(rng);
    const double c = 100 * StandardNormal(rng);
    Sample a2 = a, b2 = b;
    for (double &x : a2) x = s * x + c;
    for (double &x : b2) x = s * x + c;
    const TTestResult scaled = WelchTTest(a2, b2);
    EXPECT_NEAR(scaled.t, ab.t, 1e-8 * std::max(1.0, std::abs(ab.t)));
    EXPECT_NEAR(scaled.p, ab.p, 1e-9);
  }
}

TEST(WelchTest, PooledVariant) {
  const TTestResult r =
      TTest(Sample{1, 2, 3, 4, 5}, Sample{2, 3, 4, 5, 6}, TTestVariant::kPooled);
  EXPECT_NEAR(r.t, -1.0, 1e-12);
  EXPECT_EQ(r.df, 8.0);
}

TEST(ChiSquareTest, Examples) {
  ChiSquareResult r = ChiSquareTest({{10, 10}, {10, 10}});
  EXPECT_EQ(r.chi2, 0.0);
  EXPECT_EQ(r.p, 1.0);
  r = ChiSquareTest({{20, 0}, {0, 20}});
  EXPECT_NEAR(r.chi2, 40.0, 1e-12);
  EXPECT_EQ(r.df, 1.0);
  EXPECT_LT(r.p, 1e-9);
}

TEST(ChiSquareTest, ZeroColumnsAreDropped) {
  const ChiSquareResult r = ChiSquareTest({{5, 0, 7}, {3, 0, 9}});
  EXPECT_EQ(r.dropped_columns, std::vector<std::size_t>{1});
  EXPECT_EQ(r.df, 1.0);
  EXPECT_THROW(ChiSquareTest({{1, 2}}), Error);
  EXPECT_THROW(ChiSquareTest({{1, 2}, {1}}), Error);
}

TEST(ChiSquareTest, ProportionalRowsGiveZero) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> row(2 + UniformIndex(rng, 8));
    for (double &v : row) v = static_cast<double>(1 + UniformIndex(rng, 20));
    std::vector<double> scaled = row;
    const double f = static_cast<double>(1 + UniformIndex(rng, 5));
    for (double &v : scaled) v *= f;
    EXPECT_NEAR(ChiSquareTest({row, scaled}).chi2, 0.0, 1e-9);
  }
}

TEST(ChiSquareTest, NullCalibration) {
  Rng rng(2024);
  int significant = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<double>> table(2, std::vector<double>(5, 0));
    for (int row = 0; row < 2; ++row) {
      for (int i = 0; i < 200; ++i) table[row][UniformIndex(rng, 5)] += 1;
    }
    significant += ChiSquareTest(table).p < 0.05;
  }
  EXPECT_LE(significant, trials * 6 / 100);
}

TEST(TopicControlledMeanTest, Examples) {
  auto s = TopicControlledMean({{"A", {2, 4}}, {"B", {6}}});
  EXPECT_DOUBLE_EQ(s.per_topic.at("A"), 3.0);
  EXPECT_DOUBLE_EQ(s.per_topic.at("B"), 6.0);
  EXPECT_DOUBLE_EQ(s.inter_topic_mean, 4.5);
  EXPECT_DOUBLE_EQ(TopicControlledMean({{"A", {1, 2, 6}}}).inter_topic_mean, 3.0);
  EXPECT_DOUBLE_EQ(TopicControlledMean({{"A", {1, 3}}, {"B", {5, 7}}}).inter_topic_mean,
                   4.0);
  EXPECT_THROW(TopicControlledMean({}), Error);
}

TEST(TopicControlledMeanTest, OrderInvariant) {
  const auto a = TopicControlledMean({{"z", {1, 9}}, {"a", {4}}, {"m", {2, 2, 8}}});
  const auto b = TopicControlledMean({{"m", {8, 2, 2}}, {"z", {9, 1}}, {"a", {4}}});
  EXPECT_DOUBLE_EQ(a.inter_topic_mean, b.inter_topic_mean);
}

TEST(CompareGroupsTest, TestableAndUntestable) {
  GroupComparison g = CompareGroups(Sample{1, 2, 3, 4, 5}, Sample{2, 3, 4, 5, 6},
                                    "en", "m", "pre_edit");
  EXPECT_TRUE(g.testable);
  EXPECT_DOUBLE_EQ(g.mean_primary, 3.0);
  EXPECT_DOUBLE_EQ(g.mean_nonprimary, 4.0);
  EXPECT_NEAR(g.se_primary, std::sqrt(2.5 / 5), 1e-12);
  EXPECT_EQ(g.stars, "");

  Sample many(50);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = static_cast<double>(i);
  g = CompareGroups(Sample{1}, many, "en", "m", "pre_edit");
  EXPECT_FALSE(g.testable);
  EXPECT_FALSE(g.note.empty());
  EXPECT_EQ(g.n_primary, 1u);
  EXPECT_EQ(g.n_nonprimary, 50u);
}

TEST(CompareGroupsTest, Stars) {
  EXPECT_EQ(SignificanceStars(0.2), "");
  EXPECT_EQ(SignificanceStars(0.04), "*");
  EXPECT_EQ(SignificanceStars(0.009), "**");
  EXPECT_EQ(SignificanceStars(0.0009), "***");
}

}  // namespace
}  // namespace editlens
