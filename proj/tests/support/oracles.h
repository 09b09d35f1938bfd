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

// Brute-force reference implementations. Each one is deliberately naive so
// that it can be checked by inspection.

#ifndef EDITLENS_TESTS_ORACLES_H_
#define EDITLENS_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "editlens/topics.h"

namespace editlens::oracle {

// Maximal runs [first, last] of sorted timestamps whose inner gaps are all
// <= cutoff, found by testing every candidate interval.
inline std::vector<std::pair<std::size_t, std::size_t>> SessionSplits(
    const std::vector<int64_t> &ts, int64_t cutoff) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = ts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      bool inner_ok = true;
      for (std::size_t k = i + 1; k <= j; ++k) {
        if (ts[k] - ts[k - 1] > cutoff) inner_ok = false;
      }
      const bool left_closed = i == 0 || ts[i] - ts[i - 1] > cutoff;
      const bool right_closed = j + 1 == n || ts[j + 1] - ts[j] > cutoff;
      if (inner_ok && left_closed && right_closed) out.emplace_back(i, j);
    }
  }
  return out;
}

inline bool IsSubsequence(const std::vector<std::string> &sub,
                          const std::vector<std::string> &seq) {
  std::size_t j = 0;
  for (const std::string &s : seq) {
    if (j < sub.size() && sub[j] == s) ++j;
  }
  return j == sub.size();
}

// Longest common subsequence length by enumerating every subsequence of `a`.
inline std::size_t LcsLength(const std::vector<std::string> &a,
                             const std::vector<std::string> &b) {
  std::size_t best = 0;
  const uint32_t n = static_cast<uint32_t>(a.size());
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    std::vector<std::string> sub;
    for (uint32_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (IsSubsequence(sub, b)) best = size;
  }
  return best;
}

inline std::size_t Medoid(const std::vector<Point> &points,
                          const std::vector<std::size_t> &members) {
  std::size_t best = members.front();
  double best_sum = INFINITY;
  for (std::size_t m : members) {
    double sum = 0;
    for (std::size_t o : members) {
      double d2 = 0;
      for (std::size_t c = 0; c < points[m].size(); ++c) {
        d2 += (points[m][c] - points[o][c]) * (points[m][c] - points[o][c]);
      }
      sum += std::sqrt(d2);
    }
    if (sum < best_sum) {
      best_sum = sum;
      best = m;
    }
  }
  return best;
}

// Quadratic DBSCAN: core points are joined by union-find; a border point
// goes to the component with the smallest core index among its neighbours.
inline std::vector<int> Dbscan(const std::vector<Point> &points, double eps,
                               int min_pts) {
  const std::size_t n = points.size();
  std::vector<std::vector<bool>> near(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d2 = 0;
      for (std::size_t c = 0; c < points[i].size(); ++c) {
        d2 += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
      }
      near[i][j] = std::sqrt(d2) <= eps;
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    core[i] = std::count(near[i].begin(), near[i].end(), true) >= min_pts;
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (core[i] && core[j] && near[i][j]) {
        const std::size_t a = find(i), b = find(j);
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // Root of each component is its smallest index, so roots order clusters.
  std::map<std::size_t, int> cluster_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i] && !cluster_of_root.count(find(i))) {
      const int id = static_cast<int>(cluster_of_root.size());
      cluster_of_root[find(i)] = id;
    }
  }
  std::vector<int> labels(n, kNoise);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      labels[i] = cluster_of_root[find(i)];
      continue;
    }
    std::size_t best_root = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (core[j] && near[i][j]) best_root = std::min(best_root, find(j));
    }
    if (best_root < n) labels[i] = cluster_of_root[best_root];
  }
  return labels;
}

// True when the two labelings induce the same partition and agree on noise.
inline bool SamePartition(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == kNoise) != (b[i] == kNoise)) return false;
    if (a[i] == kNoise) continue;
    auto [it1, new1] = ab.emplace(a[i], b[i]);
    auto [it2, new2] = ba.emplace(b[i], a[i]);
    if (it1->second != b[i] || it2->second != a[i]) return false;
  }
  return true;
}

// Exact expectation of the maximum of a uniformly chosen k-subset.
inline double ExpectedMaxOfK(const std::vector<double> &scores, int k) {
  const std::size_t n = scores.size();
  double total = 0;
  std::size_t count = 0;
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - k, pick.end(), true);
  do {
    double m = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) m = std::max(m, scores[i]);
    }
    total += m;
    ++count;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return total / static_cast<double>(count);
}

struct WelchReference {
  double t;
  double df;
  double p;
};

// Welch's test evaluated in 50-digit arithmetic with Boost.Math.
inline WelchReference Welch(const std::vector<double> &a,
                            const std::vector<double> &b) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  auto moments = [](const std::vector<double> &x) {
    Big mean = 0;
    for (double v : x) mean += Big(v);
    mean /= x.size();
    Big ss = 0;
    for (double v : x) ss += (Big(v) - mean) * (Big(v) - mean);
    return std::make_pair(mean, ss / (x.size() - 1));
  };
  const auto [ma, va] = moments(a);
  const auto [mb, vb] = moments(b);
  const Big sa = va / a.size();
  const Big sb = vb / b.size();
  const Big t = (ma - mb) / boost::multiprecision::sqrt(sa + sb);
  const Big df = (sa + sb) * (sa + sb) /
                 (sa * sa / (a.size() - 1) + sb * sb / (b.size() - 1));
  boost::math::students_t_distribution<Big> dist(df);
  const Big p = 2 * boost::math::cdf(boost::math::complement(
                        dist, boost::multiprecision::abs(t)));
  return {t.convert_to<double>(), df.convert_to<double>(),
          p.convert_to<double>()};
}

}  // namespace editlens::oracle

#endif  // EDITLENS_TESTS_ORACLES_H_
