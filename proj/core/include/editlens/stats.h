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

#ifndef EDITLENS_STATS_H_
#define EDITLENS_STATS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace editlens {

// Regularized incomplete beta I_x(a, b), continued fraction evaluation.
double RegularizedIncompleteBeta(double a, double b, double x);
// Regularized upper incomplete gamma Q(a, x).
double RegularizedUpperGamma(double a, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double StudentTTwoTailed(double t, double df);
// P(X >= x) for chi-square with `df` degrees of freedom.
double ChiSquareSurvival(double x, double df);

struct TTestResult {
  double t = 0;
  double df = 0;
  double p = 1;
  // Both samples constant with equal means; t = 0 and p = 1 by convention.
  bool zero_variance = false;
};

enum class TTestVariant { kWelch, kPooled };

// Two-tailed independent samples t-test. Welch-Satterthwaite df by default.
// Throws Error(kDegenerateSample) when a sample has fewer than two values
// and Error(kZeroVariance) when both samples are constant with different
// means.
TTestResult TTest(std::span<const double> a, std::span<const double> b,
                  TTestVariant variant = TTestVariant::kWelch);
inline TTestResult WelchTTest(std::span<const double> a,
                              std::span<const double> b) {
  return TTest(a, b, TTestVariant::kWelch);
}

struct ChiSquareResult {
  double chi2 = 0;
  double df = 0;
  double p = 1;
  std::vector<std::size_t> dropped_columns;  // all-zero columns
};

// Pearson chi-square test of homogeneity on a rows x columns table of
// counts. All-zero columns are dropped, reducing df. Throws
// Error(kInvalidArgument) for fewer than two usable columns or an empty row.
ChiSquareResult ChiSquareTest(const std::vector<std::vector<double>> &table);

struct TopicControlledScore {
  std::map<std::string, double> per_topic;
  double inter_topic_mean = 0;
};

// Mean within each topic first, then the unweighted mean across topics.
// Topics without scores are ignored; throws Error(kInvalidArgument) when no
// topic has a score.
TopicControlledScore TopicControlledMean(
    const std::map<std::string, std::vector<double>> &scores);

double Mean(std::span<const double> xs);
// Sample variance (n - 1 denominator).
double SampleVariance(std::span<const double> xs);
double StandardError(std::span<const double> xs);

// "***" p < 0.001, "**" p < 0.01, "*" p < 0.05, "" otherwise.
std::string_view SignificanceStars(double p);

struct GroupComparison {
  std::string metric;
  std::string lang;
  std::string aspect;
  double mean_primary = 0;
  double mean_nonprimary = 0;
  double se_primary = 0;
  double se_nonprimary = 0;
  std::size_t n_primary = 0;
  std::size_t n_nonprimary = 0;
  bool testable = false;
  std::string note;  // why untestable
  TTestResult test;
  std::string stars;
};

// Group means and a t-test for one (lang, metric, aspect). Groups smaller
// than two are reported as untestable rather than thrown.
GroupComparison CompareGroups(std::span<const double> primary,
                              std::span<const double> nonprimary,
                              std::string lang, std::string metric,
                              std::string aspect,
                              TTestVariant variant = TTestVariant::kWelch);

}  // namespace editlens

#endif  // EDITLENS_STATS_H_
