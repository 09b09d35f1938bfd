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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "editlens/error.h"

namespace editlens {
namespace {

constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// Continued fraction for I_x(a, b), modified Lentz.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers that know y exactly
// avoid cancellation.
double IncompleteBeta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, y) / b;
}

double LowerGammaSeries(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double UpperGammaContinuedFraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (a <= 0 || b <= 0 || x < 0 || x > 1) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta domain");
  }
  return IncompleteBeta(a, b, x, 1.0 - x);
}

double RegularizedUpperGamma(double a, double x) {
  if (a <= 0 || x < 0) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete gamma domain");
  }
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - LowerGammaSeries(a, x);
  return UpperGammaContinuedFraction(a, x);
}

double StudentTTwoTailed(double t, double df) {
  if (!(df > 0)) throw Error(ErrorCode::kInvalidArgument, "df must be > 0");
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  // p = I_{df/(df+t^2)}(df/2, 1/2)
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return std::clamp(IncompleteBeta(df / 2.0, 0.5, x, y), 0.0, 1.0);
}

double ChiSquareSurvival(double x, double df) {
  if (!(df > 0)) throw Error(ErrorCode::kInvalidArgument, "df must be > 0");
  if (x <= 0) return 1.0;
  return std::clamp(RegularizedUpperGamma(df / 2.0, x / 2.0), 0.0, 1.0);
}

double Mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double SampleVariance(std::span<const double> xs) {
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double StandardError(std::span<const double> xs) {
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(SampleVariance(xs) / static_cast<double>(xs.size()));
}

TTestResult TTest(std::span<const double> a, std::span<const double> b,
                  TTestVariant variant) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kDegenerateSample,
                "sample sizes " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = Mean(a), mb = Mean(b);
  const double va = SampleVariance(a), vb = SampleVariance(b);
  TTestResult r;
  if (va == 0.0 && vb == 0.0) {
    if (ma == mb) {
      r.t = 0.0;
      r.df = na + nb - 2.0;
      r.p = 1.0;
      r.zero_variance = true;
      return r;
    }
    throw Error(ErrorCode::kZeroVariance,
                "both samples constant with different means");
  }
  if (variant == TTestVariant::kWelch) {
    const double sa = va / na, sb = vb / nb;
    r.t = (ma - mb) / std::sqrt(sa + sb);
    r.df = (sa + sb) * (sa + sb) /
           (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  } else {
    r.df = na + nb - 2.0;
    const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / r.df;
    r.t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  }
  r.p = StudentTTwoTailed(r.t, r.df);
  return r;
}

ChiSquareResult ChiSquareTest(const std::vector<std::vector<double>> &table) {
  if (table.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two rows");
  }
  const std::size_t cols = table.front().size();
  for (const auto &row : table) {
    if (row.size() != cols) {
      throw Error(ErrorCode::kInvalidArgument, "ragged contingency table");
    }
    for (double v : row) {
      if (v < 0) throw Error(ErrorCode::kInvalidArgument, "negative count");
    }
  }
  ChiSquareResult result;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (const auto &row : table) sum += row[c];
    if (sum > 0) {
      kept.push_back(c);
    } else {
      result.dropped_columns.push_back(c);
    }
  }
  if (kept.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least two non-empty columns");
  }
  std::vector<double> row_sum(table.size(), 0.0);
  std::vector<double> col_sum(kept.size(), 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      row_sum[r] += table[r][kept[k]];
      col_sum[k] += table[r][kept[k]];
    }
    if (row_sum[r] <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "empty contingency row");
    }
    total += row_sum[r];
  }
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t k = 0; k < kept.size(); ++k) {
      const double expected = row_sum[r] * col_sum[k] / total;
      const double diff = table[r][kept[k]] - expected;
      result.chi2 += diff * diff / expected;
    }
  }
  result.df = static_cast<double>((table.size() - 1) * (kept.size() - 1));
  result.p = ChiSquareSurvival(result.chi2, result.df);
  return result;
}

TopicControlledScore TopicControlledMean(
    const std::map<std::string, std::vector<double>> &scores) {
  TopicControlledScore out;
  double sum = 0.0;
  for (const auto &[topic, values] : scores) {
    if (values.empty()) continue;
    const double m = Mean(values);
    out.per_topic[topic] = m;
    sum += m;
  }
  if (out.per_topic.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no topic has scores");
  }
  out.inter_topic_mean = sum / static_cast<double>(out.per_topic.size());
  return out;
}

std::string_view SignificanceStars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

GroupComparison CompareGroups(std::span<const double> primary,
                              std::span<const double> nonprimary,
                              std::string lang, std::string metric,
                              std::string aspect, TTestVariant variant) {
  GroupComparison g;
  g.lang = std::move(lang);
  g.metric = std::move(metric);
  g.aspect = std::move(aspect);
  g.n_primary = primary.size();
  g.n_nonprimary = nonprimary.size();
  g.mean_primary = Mean(primary);
  g.mean_nonprimary = Mean(nonprimary);
  g.se_primary = StandardError(primary);
  g.se_nonprimary = StandardError(nonprimary);
  if (primary.size() < 2 || nonprimary.size() < 2) {
    g.note = "group size below 2";
    return g;
  }
  try {
    g.test = TTest(primary, nonprimary, variant);
    g.testable = true;
    g.stars = std::string(SignificanceStars(g.test.p));
  } catch (const Error &e) {
    g.note = e.what();
  }
  return g;
}

}  // namespace editlens
